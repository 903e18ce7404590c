use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::analysis::DistributionKind;
use crate::approx_mm::{truncation_effective_side, TPP_TRUNCATION_MAX};
use crate::exact_mm::BlockingScheme;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// `(AS)(S^T B)` with a Gaussian sketch.
    JlSketch,
    /// The same sketch with every product formed by the blocked STPP algorithm.
    SketchAndSolve,
    /// Randomized PolyForm over `Z_{r n^2}`.
    Polyform,
    /// Frequency truncation of the vanilla TPP embedding.
    TppFourier,
    /// Slab truncation of the STPP embedding, four pairs per square product.
    StppFourier,
    /// Best rank-`r` approximation of the exact product.
    SvdBaseline,
    /// The exact blocked STPP product.
    ExactStpp,
    /// Triple-loop product.
    Naive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::JlSketch,
        Algorithm::SketchAndSolve,
        Algorithm::Polyform,
        Algorithm::TppFourier,
        Algorithm::StppFourier,
        Algorithm::SvdBaseline,
        Algorithm::ExactStpp,
        Algorithm::Naive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::JlSketch => "jl_sketch",
            Algorithm::SketchAndSolve => "sketch_and_solve",
            Algorithm::Polyform => "polyform",
            Algorithm::TppFourier => "tpp_fourier",
            Algorithm::StppFourier => "stpp_fourier",
            Algorithm::SvdBaseline => "svd_baseline",
            Algorithm::ExactStpp => "exact_stpp",
            Algorithm::Naive => "naive",
        }
    }

    /// Whether the algorithm draws random numbers beyond the inputs.
    pub fn is_randomized(self) -> bool {
        matches!(self, Algorithm::JlSketch | Algorithm::SketchAndSolve | Algorithm::Polyform)
    }

    /// Valid budgets `r_min..=r_max` for inputs of side `n`.
    pub fn r_range(self, n: usize) -> (usize, usize) {
        match self {
            Algorithm::JlSketch | Algorithm::SketchAndSolve | Algorithm::Polyform => (1, n),
            Algorithm::StppFourier => (0, truncation_effective_side(n) / 2 + 1),
            Algorithm::TppFourier | Algorithm::SvdBaseline | Algorithm::ExactStpp | Algorithm::Naive => (0, n),
        }
    }

    /// Whether the output must equal `AB` at budget `r`.
    pub fn is_exact_at(self, r: usize, n: usize) -> bool {
        match self {
            Algorithm::Naive | Algorithm::ExactStpp => true,
            Algorithm::JlSketch | Algorithm::SketchAndSolve => false,
            Algorithm::Polyform | Algorithm::TppFourier | Algorithm::StppFourier | Algorithm::SvdBaseline => {
                r == self.r_range(n).1
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown algorithm {s:?}")))
    }
}

/// Budgets to sweep: an explicit list, or ten linear steps from 1 to the
/// algorithm's largest budget.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum RSchedule {
    #[default]
    Auto,
    List(Vec<usize>),
}

/// Number of steps in the automatic schedule.
pub const AUTO_STEPS: usize = 10;

/// `round(1 + k (r_max - 1) / 9)` for `k = 0..10`, deduplicated.
pub fn linear_schedule(r_max: usize) -> Vec<usize> {
    if r_max == 0 {
        return vec![0];
    }
    let mut out: Vec<usize> = (0..AUTO_STEPS)
        .map(|k| 1 + ((k * (r_max - 1)) as f64 / (AUTO_STEPS - 1) as f64).round() as usize)
        .collect();
    out.dedup();
    out
}

impl RSchedule {
    pub fn resolve(&self, alg: Algorithm, n: usize) -> Result<Vec<usize>> {
        let (lo, hi) = alg.r_range(n);
        let rs = match self {
            RSchedule::Auto => linear_schedule(hi),
            RSchedule::List(v) => {
                let mut v = v.clone();
                v.sort_unstable();
                v.dedup();
                v
            }
        };
        if rs.is_empty() {
            return Err(Error::InvalidParameter("empty r schedule".into()));
        }
        if let Some(&r) = rs.iter().find(|&&r| r < lo || r > hi) {
            return Err(Error::InvalidParameter(format!("r={r} outside [{lo}, {hi}] for {alg} at n={n}")));
        }
        Ok(rs)
    }
}

impl FromStr for RSchedule {
    type Err = Error;

    /// `auto` or a comma-separated list such as `1,5,10`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "auto" {
            return Ok(RSchedule::Auto);
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("r value {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()
            .map(RSchedule::List)
    }
}

impl Serialize for RSchedule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RSchedule::Auto => s.serialize_str("auto"),
            RSchedule::List(v) => v.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for RSchedule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Word(String),
            List(Vec<usize>),
        }
        match Raw::deserialize(d)? {
            Raw::List(v) => Ok(RSchedule::List(v)),
            Raw::Word(w) => w.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?}, expected csv or json"))),
        }
    }
}

fn default_trials() -> usize {
    10
}

fn default_true() -> bool {
    true
}

/// One sweep: an algorithm, a side `n`, budgets, trials and an input distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub n: usize,
    #[serde(default)]
    pub r: RSchedule,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_distribution")]
    pub distribution: DistributionKind,
    #[serde(default)]
    pub seed: u64,
    /// Group modulus for `exact_stpp` and `sketch_and_solve` (default 3).
    #[serde(default)]
    pub m: Option<usize>,
    /// Number of `Z_m^3` factors for `exact_stpp` and `sketch_and_solve` (default 1).
    #[serde(default, rename = "N")]
    pub n_factors: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
    /// Compute the SVD of each output for rank and norm columns.
    #[serde(default = "default_true")]
    pub rank_diagnostics: bool,
    /// Measure wall time; when off `wall_ms` is written as 0.
    #[serde(default = "default_true")]
    pub record_wall_time: bool,
    /// Run trials on the rayon pool. Output order does not depend on it.
    #[serde(default)]
    pub parallel: bool,
}

fn default_distribution() -> DistributionKind {
    DistributionKind::Rademacher
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, n: usize) -> Self {
        ExperimentConfig {
            algorithm,
            n,
            r: RSchedule::Auto,
            trials: default_trials(),
            distribution: default_distribution(),
            seed: 0,
            m: None,
            n_factors: None,
            output: None,
            format: OutputFormat::Csv,
            rank_diagnostics: true,
            record_wall_time: true,
            parallel: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// `(m, N)` used by the blocked algorithms.
    pub fn blocking(&self) -> (usize, usize) {
        (self.m.unwrap_or(3), self.n_factors.unwrap_or(1))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.distribution == DistributionKind::Custom {
            return Err(Error::Unsupported("custom distributions cannot be sampled in a sweep".into()));
        }
        self.r.resolve(self.algorithm, self.n)?;
        match self.algorithm {
            Algorithm::ExactStpp | Algorithm::SketchAndSolve => {
                let (m, n_factors) = self.blocking();
                let q = BlockingScheme::new(m, n_factors)?.q;
                if q > self.n {
                    return Err(Error::InvalidParameter(format!(
                        "block side (m-1)^N = {q} exceeds n = {}",
                        self.n
                    )));
                }
            }
            Algorithm::TppFourier => {
                if self.n.checked_pow(3).is_none_or(|s| s > TPP_TRUNCATION_MAX) {
                    return Err(Error::TooLarge(format!("tpp_fourier needs n^3 <= {TPP_TRUNCATION_MAX}")));
                }
            }
            _ => {}
        }
        Ok(())
    }
}
