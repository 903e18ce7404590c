//! Diagnostics: ATPQ collision counting, closed-form spectra of the STPP
//! embedding, entry distributions, error metrics and SVD baselines.

mod atpq;
mod distribution;
mod metrics;
mod spectral;

pub use atpq::{
    ap_atpq_closed_form, atpq_count, atpq_count_naive, lower_bound_check, CollisionReport, LowerBound, ATPQ_CAP,
    ATPQ_NAIVE_CAP,
};
pub use distribution::{DistributionKind, DistributionSpec};
pub use metrics::{best_rank_r, error_metrics, rank_diagnostics, ErrorReport, RankReport, SvdBaseline, RANK_TOL};
pub use spectral::{c_ab_formula, indicator_spectrum, indicator_sum, s_delta, t_delta, SignalSide};
