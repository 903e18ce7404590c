//! Exact products through one convolution per batch over `Z_m^{3N}`.
//!
//! A batch multiplies `2^N` independent pairs of `(m-1)^N x (m-1)^N`
//! matrices. Square matrices of side `n0 = 2^N (m-1)^N` are handled by the
//! `k x k` blocking with `k = 2^N`, which needs `k^2` batches.

mod blocked;
mod calc;

pub use blocked::{
    blocked_multiply, blocked_multiply_with, blocked_product, naive_multiply, stpp_batch_multiply, BlockingScheme,
    Execution, StppMultiplier,
};
pub use calc::{exponent_calculator, threshold_calculator, ExponentReport, ThresholdReport, THRESHOLD_SEARCH_LIMIT};
