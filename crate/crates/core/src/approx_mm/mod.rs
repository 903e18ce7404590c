//! Approximate products: Gaussian sketching, randomized PolyForm over an
//! arithmetic-progression triplet, and Fourier truncation of the STPP and
//! TPP embeddings.

mod polyform;
mod sketch;
mod slab;
mod tpp_trunc;

pub use polyform::{polyform, polyform_with, PolyFormRandomness};
pub use sketch::{jl_sketch_mm, jl_sketch_mm_with, sketch_and_solve, sketch_and_solve_with, SketchSpec};
pub use slab::{
    restricted_product, slab_partial_fft, slab_partial_ifft, stpp_truncated_pair, stpp_truncated_pair_with,
    stpp_truncated_square, truncation_effective_side, EmbeddedSide, TruncationPlan,
};
pub use tpp_trunc::{tpp_frequency_set, tpp_truncated, TPP_TRUNCATION_MAX};
