use serde::Serialize;

use crate::{Error, Result};

/// Runtime exponent of the blocked algorithm at a fixed `m`:
/// `τ = 3 ln m / ln(m-1)`, `η = ln 2 / ln(m-1)`, and the algorithm runs in
/// `O(n0^{(τ+2η)/(1+η)} log n0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentReport {
    pub m: usize,
    pub tau: f64,
    pub eta: f64,
    pub exponent: f64,
    /// `log2 m^3`, so one invocation on `Z_m^{3N}` costs `m^{3N} · N · log_factor`.
    pub log_factor: f64,
}

pub fn exponent_calculator(m: usize) -> Result<ExponentReport> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("the exponent needs m >= 3, got {m}")));
    }
    let mf = m as f64;
    let l = (mf - 1.0).ln();
    let tau = 3.0 * mf.ln() / l;
    let eta = std::f64::consts::LN_2 / l;
    Ok(ExponentReport {
        m,
        tau,
        eta,
        exponent: (tau + 2.0 * eta) / (1.0 + eta),
        log_factor: 3.0 * mf.log2(),
    })
}

/// Smallest `N` at which the model cost `C m^{3N} log2(m^{3N})` drops below
/// the naive FLOP count `2·2^N (m-1)^{3N} - 2^N (m-1)^{2N}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub m: usize,
    pub c: f64,
    pub n_factors: usize,
    /// `n0 = (2(m-1))^N`, as a float since it overflows quickly.
    pub matrix_side: f64,
    pub log10_matrix_side: f64,
}

/// Largest `N` searched.
pub const THRESHOLD_SEARCH_LIMIT: usize = 10_000;

pub fn threshold_calculator(m: usize, c: f64) -> Result<ThresholdReport> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("the threshold needs m >= 3, got {m}")));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidParameter(format!("the constant C must be positive, got {c}")));
    }
    let (lm, lq) = ((m as f64).ln(), ((m - 1) as f64).ln());
    for n in 1..=THRESHOLD_SEARCH_LIMIT {
        let nf = n as f64;
        // both sides in natural-log form to stay finite for large N
        let fast = c.ln() + 3.0 * nf * lm + (3.0 * nf * (m as f64).log2()).ln();
        // 2^N (m-1)^{2N} (2 (m-1)^N - 1)
        let tail = if nf * lq > 40.0 { std::f64::consts::LN_2 + nf * lq } else { (2.0 * (nf * lq).exp() - 1.0).ln() };
        let naive = nf * std::f64::consts::LN_2 + 2.0 * nf * lq + tail;
        if fast < naive {
            let log10_side = nf * (2.0 * (m - 1) as f64).log10();
            return Ok(ThresholdReport {
                m,
                c,
                n_factors: n,
                matrix_side: 10f64.powf(log10_side),
                log10_matrix_side: log10_side,
            });
        }
    }
    Err(Error::InvalidParameter(format!(
        "no N <= {THRESHOLD_SEARCH_LIMIT} makes the convolution cheaper for m={m}, C={c}"
    )))
}
