use nalgebra::SVD;

use crate::matrix::{frobenius_sq, require_shape, Matrix};
use crate::{Error, Result};

/// Default relative tolerance for numerical rank: `σ_i > 1e-8 · σ_max`.
pub const RANK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    /// `‖C - AB‖_F^2 / (‖A‖_F^2 ‖B‖_F^2)`.
    pub normalized_error: f64,
    /// `‖C - AB‖_F`.
    pub absolute_error: f64,
    /// `max |C - AB|` entrywise.
    pub max_entry_error: f64,
}

/// Error of `c` against the exact product `c_exact = a b`. A zero denominator
/// gives `0` for an exact answer and `+inf` otherwise.
pub fn error_metrics(c: &Matrix, c_exact: &Matrix, a: &Matrix, b: &Matrix) -> Result<ErrorReport> {
    require_shape(c, c_exact.nrows(), c_exact.ncols())?;
    require_shape(c_exact, a.nrows(), b.ncols())?;
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch { expected: a.ncols(), got: b.nrows() });
    }
    let diff = c - c_exact;
    let err_sq = frobenius_sq(&diff);
    let denom = frobenius_sq(a) * frobenius_sq(b);
    let normalized_error = if denom > 0.0 {
        err_sq / denom
    } else if err_sq == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(ErrorReport {
        normalized_error,
        absolute_error: err_sq.sqrt(),
        max_entry_error: diff.amax(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    /// Count of `σ_i > tol · σ_max`.
    pub rank: usize,
    /// `Σ σ_i`.
    pub nuclear_norm: f64,
    /// `Σ σ_i^2`, which equals `‖C‖_F^2`.
    pub sum_sq_singular_values: f64,
    /// Descending.
    pub singular_values: Vec<f64>,
}

fn sorted_singular_values(m: &Matrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn rank_diagnostics(c: &Matrix, tol: Option<f64>) -> RankReport {
    let singular_values = sorted_singular_values(c);
    let tol = tol.unwrap_or(RANK_TOL);
    let top = singular_values.first().copied().unwrap_or(0.0);
    let rank = singular_values.iter().filter(|&&s| s > tol * top && s > 0.0).count();
    RankReport {
        rank,
        nuclear_norm: singular_values.iter().sum(),
        sum_sq_singular_values: singular_values.iter().map(|s| s * s).sum(),
        singular_values,
    }
}

/// A thin SVD kept around so that several truncation ranks can be read off
/// one factorization.
#[derive(Debug, Clone)]
pub struct SvdBaseline {
    svd: SVD<f64, nalgebra::Dyn, nalgebra::Dyn>,
    order: Vec<usize>,
}

impl SvdBaseline {
    pub fn new(m: &Matrix) -> Self {
        let svd = SVD::new(m.clone(), true, true);
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        SvdBaseline { svd, order }
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        self.order.iter().map(|&i| self.svd.singular_values[i]).collect()
    }

    /// The Frobenius-optimal rank-`r` approximation `Σ_{i<r} σ_i u_i v_i^T`.
    pub fn truncate(&self, r: usize) -> Matrix {
        let u = self.svd.u.as_ref().expect("computed with U");
        let vt = self.svd.v_t.as_ref().expect("computed with V^T");
        let mut out = Matrix::zeros(u.nrows(), vt.ncols());
        for &i in self.order.iter().take(r) {
            let s = self.svd.singular_values[i];
            out += (u.column(i) * s) * vt.row(i);
        }
        out
    }

    /// `sqrt(Σ_{i>=r} σ_i^2)`, the residual of [`SvdBaseline::truncate`].
    pub fn tail_norm(&self, r: usize) -> f64 {
        self.singular_values().iter().skip(r).map(|s| s * s).sum::<f64>().sqrt()
    }
}

/// Best rank-`r` approximation of `m` by truncated SVD.
pub fn best_rank_r(m: &Matrix, r: usize) -> Matrix {
    SvdBaseline::new(m).truncate(r)
}
