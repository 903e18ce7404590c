use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::exact_mm::{blocked_product, naive_multiply, Execution, StppMultiplier};
use crate::matrix::{require_shape, require_square, Matrix};
use crate::{Error, Result};

/// An `n x r` Gaussian sketch with `N(0, 1/r)` entries, so `E[S S^T] = I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SketchSpec {
    pub n: usize,
    pub r: usize,
    pub seed: u64,
}

impl SketchSpec {
    pub fn new(n: usize, r: usize, seed: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("sketch dimension r must be at least 1".into()));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("sketch needs n >= 1".into()));
        }
        Ok(SketchSpec { n, r, seed })
    }

    /// The sketch matrix; entries are drawn row by row from `ChaCha8(seed)`.
    pub fn matrix(&self) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let scale = 1.0 / (self.r as f64).sqrt();
        let mut s = Matrix::zeros(self.n, self.r);
        for i in 0..self.n {
            for j in 0..self.r {
                let z: f64 = StandardNormal.sample(&mut rng);
                s[(i, j)] = z * scale;
            }
        }
        s
    }
}

/// `(A S)(S^T B)` with a fresh Gaussian sketch.
pub fn jl_sketch_mm(a: &Matrix, b: &Matrix, r: usize, seed: u64) -> Result<Matrix> {
    let n = require_square(a, "A")?;
    require_shape(b, n, n)?;
    let s = SketchSpec::new(n, r, seed)?.matrix();
    jl_sketch_mm_with(a, b, &s)
}

/// `(A S)(S^T B)` for a caller-supplied sketch.
pub fn jl_sketch_mm_with(a: &Matrix, b: &Matrix, s: &Matrix) -> Result<Matrix> {
    if s.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch { expected: a.ncols(), got: s.nrows() });
    }
    let as_ = naive_multiply(a, s)?;
    let stb = naive_multiply(&s.transpose(), b)?;
    naive_multiply(&as_, &stb)
}

/// Sketch-and-solve: the same `(A S)(S^T B)`, with all three products formed
/// by the exact blocked algorithm over `Z_m^{3N}`.
pub fn sketch_and_solve(a: &Matrix, b: &Matrix, r: usize, m: usize, n_factors: usize, seed: u64) -> Result<Matrix> {
    let n = require_square(a, "A")?;
    require_shape(b, n, n)?;
    let s = SketchSpec::new(n, r, seed)?.matrix();
    let mult = StppMultiplier::new(m, n_factors)?;
    sketch_and_solve_with(a, b, &s, &mult, Execution::Sequential)
}

/// Sketch-and-solve with a caller-supplied sketch and multiplier. Zero
/// padding to multiples of the block side leaves the product unchanged.
pub fn sketch_and_solve_with(
    a: &Matrix,
    b: &Matrix,
    s: &Matrix,
    mult: &StppMultiplier,
    exec: Execution,
) -> Result<Matrix> {
    let n = require_square(a, "A")?;
    require_shape(b, n, n)?;
    if s.nrows() != n {
        return Err(Error::DimensionMismatch { expected: n, got: s.nrows() });
    }
    if mult.q() > n {
        return Err(Error::InvalidParameter(format!(
            "block side (m-1)^N = {} exceeds n = {n}; choose a smaller (m, N)",
            mult.q()
        )));
    }
    let as_ = blocked_product(mult, a, s, exec)?;
    let stb = blocked_product(mult, &s.transpose(), b, exec)?;
    blocked_product(mult, &as_, &stb, exec)
}
