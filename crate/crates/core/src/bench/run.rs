use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{error_metrics, rank_diagnostics, DistributionSpec, SvdBaseline};
use crate::approx_mm::{jl_sketch_mm, polyform, sketch_and_solve_with, stpp_truncated_square, tpp_truncated, truncation_effective_side, SketchSpec};
use crate::exact_mm::{blocked_product, naive_multiply, Execution, StppMultiplier};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// Relative Frobenius tolerance for budgets at which an algorithm is exact.
pub const EXACT_TOL: f64 = 1e-8;

use super::config::{Algorithm, ExperimentConfig};

/// One `(r, trial)` measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: Option<usize>,
    #[serde(rename = "N")]
    pub n_factors: Option<usize>,
    pub r: usize,
    pub trial: usize,
    /// Seed of the trial's input matrices; algorithm randomness is derived from it and `r`.
    pub seed: u64,
    pub normalized_error: f64,
    pub absolute_error: f64,
    pub output_rank: usize,
    pub nuclear_norm: f64,
    pub sum_sq_singvals: f64,
    pub wall_ms: f64,
}

/// Statistics of the normalized error at one budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RSummary {
    pub r: usize,
    pub trials: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single trial.
    pub std: f64,
    pub min: f64,
    pub max: f64,
    /// The `1/r` reference line; absent at `r = 0`.
    pub reference: Option<f64>,
    /// Nominal multiplication budget `r n^2`.
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    /// Side actually multiplied; odd `n` is padded by one for `stpp_fourier`.
    pub effective_n: usize,
    pub records: Vec<TrialRecord>,
    pub summary: Vec<RSummary>,
}

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `t`: `splitmix64(master ^ t)`.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    splitmix64(master ^ trial as u64)
}

/// Seed of the algorithm's own randomness at budget `r` in a trial.
pub fn algorithm_seed(trial_seed: u64, r: usize) -> u64 {
    splitmix64(trial_seed ^ splitmix64(r as u64))
}

/// Input pair of a trial: `A` then `B`, row by row, from `ChaCha8(seed)`.
pub fn trial_inputs(dist: &DistributionSpec, n: usize, seed: u64) -> Result<(Matrix, Matrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = dist.sample_matrix(n, n, &mut rng)?;
    let b = dist.sample_matrix(n, n, &mut rng)?;
    Ok((a, b))
}

struct Runner<'a> {
    config: &'a ExperimentConfig,
    rs: Vec<usize>,
    dist: DistributionSpec,
    mult: Option<StppMultiplier>,
    group: (Option<usize>, Option<usize>),
}

impl Runner<'_> {
    fn trial(&self, trial: usize) -> Result<Vec<TrialRecord>> {
        let cfg = self.config;
        let n = cfg.n;
        let seed = trial_seed(cfg.seed, trial);
        let (a, b) = trial_inputs(&self.dist, n, seed)?;
        let exact = &a * &b;
        let svd = if cfg.algorithm == Algorithm::SvdBaseline {
            let start = Instant::now();
            let s = SvdBaseline::new(&exact);
            Some((s, start.elapsed().as_secs_f64() * 1e3))
        } else {
            None
        };
        let mut out = Vec::with_capacity(self.rs.len());
        for &r in &self.rs {
            let start = Instant::now();
            let c = match cfg.algorithm {
                Algorithm::JlSketch => jl_sketch_mm(&a, &b, r, algorithm_seed(seed, r))?,
                Algorithm::SketchAndSolve => {
                    let s = SketchSpec::new(n, r, algorithm_seed(seed, r))?.matrix();
                    sketch_and_solve_with(&a, &b, &s, self.mult.as_ref().expect("multiplier"), Execution::Sequential)?
                }
                Algorithm::Polyform => polyform(&a, &b, r, algorithm_seed(seed, r))?,
                Algorithm::TppFourier => tpp_truncated(&a, &b, r)?,
                Algorithm::StppFourier => stpp_truncated_square(&a, &b, r)?,
                Algorithm::SvdBaseline => svd.as_ref().expect("svd").0.truncate(r),
                Algorithm::ExactStpp => blocked_product(self.mult.as_ref().expect("multiplier"), &a, &b, Execution::Sequential)?,
                Algorithm::Naive => naive_multiply(&a, &b)?,
            };
            let mut wall_ms = start.elapsed().as_secs_f64() * 1e3 + svd.as_ref().map_or(0.0, |s| s.1);
            if !cfg.record_wall_time {
                wall_ms = 0.0;
            }
            let err = error_metrics(&c, &exact, &a, &b)?;
            if cfg.algorithm.is_exact_at(r, n) && err.absolute_error > EXACT_TOL * exact.norm().max(f64::MIN_POSITIVE) {
                return Err(Error::BoundViolated(format!(
                    "{} at r={r} should be exact, relative error {:.3e} (trial {trial})",
                    cfg.algorithm,
                    err.absolute_error / exact.norm()
                )));
            }
            let (output_rank, nuclear_norm, sum_sq_singvals) = if cfg.rank_diagnostics {
                let rd = rank_diagnostics(&c, None);
                (rd.rank, rd.nuclear_norm, rd.sum_sq_singular_values)
            } else {
                (0, 0.0, 0.0)
            };
            out.push(TrialRecord {
                algorithm: cfg.algorithm,
                n,
                m: self.group.0,
                n_factors: self.group.1,
                r,
                trial,
                seed,
                normalized_error: err.normalized_error,
                absolute_error: err.absolute_error,
                output_rank,
                nuclear_norm,
                sum_sq_singvals,
                wall_ms,
            });
        }
        Ok(out)
    }
}

/// Run every `(r, trial)` of the configuration. Records are ordered by `r`,
/// then trial, whatever the execution order. All trials at all budgets share
/// the trial's input pair.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let rs = config.r.resolve(config.algorithm, config.n)?;
    let dist = DistributionSpec::of_kind(config.distribution)?;
    let (mult, group, effective_n) = match config.algorithm {
        Algorithm::ExactStpp | Algorithm::SketchAndSolve => {
            let (m, nf) = config.blocking();
            (Some(StppMultiplier::new(m, nf)?), (Some(m), Some(nf)), config.n)
        }
        Algorithm::StppFourier => {
            let ne = truncation_effective_side(config.n);
            (None, (Some(ne / 2 + 1), Some(1)), ne)
        }
        _ => (None, (None, None), config.n),
    };
    let runner = Runner { config, rs: rs.clone(), dist, mult, group };
    let per_trial: Vec<Vec<TrialRecord>> = if config.parallel {
        (0..config.trials).into_par_iter().map(|t| runner.trial(t)).collect::<Result<_>>()?
    } else {
        (0..config.trials).map(|t| runner.trial(t)).collect::<Result<_>>()?
    };
    let mut records: Vec<TrialRecord> = per_trial.into_iter().flatten().collect();
    records.sort_by_key(|rec| (rec.r, rec.trial));
    let summary = summarize(&records, config.n);
    Ok(ExperimentReport { config: config.clone(), effective_n, records, summary })
}

/// Per-`r` statistics of the normalized error.
pub fn summarize(records: &[TrialRecord], n: usize) -> Vec<RSummary> {
    let mut rs: Vec<usize> = records.iter().map(|r| r.r).collect();
    rs.sort_unstable();
    rs.dedup();
    rs.into_iter()
        .map(|r| {
            let e: Vec<f64> = records.iter().filter(|x| x.r == r).map(|x| x.normalized_error).collect();
            let k = e.len() as f64;
            let mean = e.iter().sum::<f64>() / k;
            let std = if e.len() > 1 {
                (e.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
            } else {
                0.0
            };
            RSummary {
                r,
                trials: e.len(),
                mean,
                std,
                min: e.iter().copied().fold(f64::INFINITY, f64::min),
                max: e.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                reference: (r > 0).then(|| 1.0 / r as f64),
                budget: (r * n * n) as u64,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::RSchedule;

    #[test]
    fn naive_is_exact_at_every_r() {
        let mut c = ExperimentConfig::new(Algorithm::Naive, 16);
        c.trials = 1;
        let rep = run_experiment(&c).unwrap();
        assert_eq!(rep.records.len(), 10);
        assert!(rep.records.iter().all(|r| r.normalized_error == 0.0 && r.output_rank == 16));
    }

    #[test]
    fn exact_algorithms_and_full_budgets() {
        for alg in [Algorithm::ExactStpp, Algorithm::StppFourier, Algorithm::TppFourier, Algorithm::SvdBaseline] {
            let mut c = ExperimentConfig::new(alg, 7);
            c.trials = 2;
            c.r = RSchedule::List(vec![alg.r_range(7).1]);
            let rep = run_experiment(&c).unwrap();
            assert!(rep.records.iter().all(|r| r.normalized_error < 1e-20), "{alg}");
        }
    }

    #[test]
    fn order_and_parallel_agree() {
        let mut c = ExperimentConfig::new(Algorithm::Polyform, 12);
        c.trials = 3;
        c.record_wall_time = false;
        let seq = run_experiment(&c).unwrap();
        c.parallel = true;
        let par = run_experiment(&c).unwrap();
        assert_eq!(seq.records, par.records);
        let keys: Vec<_> = seq.records.iter().map(|r| (r.r, r.trial)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(seq.summary.len(), 10);
        assert_eq!(seq.summary[0].reference, Some(1.0));
    }

    #[test]
    fn seeds() {
        assert_ne!(trial_seed(1, 0), trial_seed(1, 1));
        assert_eq!(trial_seed(7, 3), splitmix64(7 ^ 3));
        assert_ne!(algorithm_seed(5, 1), algorithm_seed(5, 2));
    }
}
