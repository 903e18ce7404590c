//! Dense real matrices and the random inputs used throughout the experiments.

use nalgebra::DMatrix;
use rand::Rng;

use crate::{Error, Result};

pub type Matrix = DMatrix<f64>;

pub(crate) fn require_square(m: &Matrix, what: &str) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidParameter(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m.nrows())
}

pub(crate) fn require_shape(m: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.nrows() != rows {
        return Err(Error::DimensionMismatch { expected: rows, got: m.nrows() });
    }
    if m.ncols() != cols {
        return Err(Error::DimensionMismatch { expected: cols, got: m.ncols() });
    }
    Ok(())
}

/// Squared Frobenius norm.
pub fn frobenius_sq(m: &Matrix) -> f64 {
    m.iter().map(|x| x * x).sum()
}

/// `n x n` matrix of i.i.d. uniform ±1 entries.
pub fn rademacher<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(n, n, |_, _| if rng.random::<bool>() { 1.0 } else { -1.0 })
}

/// Zero-pad (or crop) `m` into the top-left corner of a `rows x cols` matrix.
pub fn padded(m: &Matrix, rows: usize, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(rows, cols);
    let r = rows.min(m.nrows());
    let c = cols.min(m.ncols());
    out.view_mut((0, 0), (r, c)).copy_from(&m.view((0, 0), (r, c)));
    out
}
