//! Signals over finite abelian groups, the unitary Fourier transform and
//! convolution.
//!
//! Flat indices are row-major over the moduli (last coordinate fastest).
//! Frequencies of the dual group are identified with group elements and use
//! the same indexing.

mod direct;
mod freqset;
mod group;
mod signal;
mod transform;

pub use direct::{convolve_direct, dft_direct, idft_direct, partial_fft_direct, partial_ifft_direct};
pub use freqset::{FrequencyKind, FrequencySet};
pub use group::{AbelianGroup, GroupElement, MAX_GROUP_SIZE};
pub use signal::{RestrictedSpectrum, Signal, Spectrum};
pub use transform::{convolve, fft, fft_in_place, ifft, ifft_in_place, omega_table, work_counter};

pub(crate) use signal::real_parts;
pub(crate) use transform::transform_axes;
