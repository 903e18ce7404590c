//! Matrix multiplication through convolutions in finite abelian groups.
//!
//! The crate embeds matrices as signals over a group `Z_{m1} x ... x Z_{md}`,
//! multiplies the signals with a multidimensional FFT, and reads the matrix
//! product back from a fixed set of coefficients. On top of that exact
//! pipeline it implements three approximate schemes:
//!
//! * sketch-and-solve: a Gaussian sketch followed by the exact blocked algorithm,
//! * PolyForm: a randomized low-degree embedding into `Z_{r n^2}`,
//! * Fourier truncation: keep only a structured set of frequencies (slabs)
//!   of the convolution and invert the restricted spectrum.
//!
//! Module map:
//!
//! * [`abelian_fft`] groups, signals, the unitary transform and direct oracles
//! * [`constructions`] TPP / STPP sets, embeddings and decoding
//! * [`exact_mm`] the batched STPP product, blocking and runtime calculators
//! * [`approx_mm`] the approximation algorithms
//! * [`analysis`] ATPQ counting, spectral closed forms, error and rank metrics
//! * [`bench`] experiment configuration, sweeps and CSV / JSON output
//! * [`verify`] the property suite behind `convmm verify all`

pub mod abelian_fft;
pub mod analysis;
pub mod approx_mm;
pub mod bench;
pub mod constructions;
mod error;
pub mod exact_mm;
pub mod matrix;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::Matrix;
