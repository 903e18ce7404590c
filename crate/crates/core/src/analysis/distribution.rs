use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::{Error, Result};

/// Entry distributions for random test matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    /// Uniform `±1`.
    Rademacher,
    /// Uniform `{0, 1}`.
    Bernoulli01,
    /// Standard normal.
    Gaussian,
    /// `|Z|` for standard normal `Z`.
    FoldedGaussian,
    /// Moments supplied by the caller; cannot be sampled.
    Custom,
}

impl DistributionKind {
    pub const ALL: [DistributionKind; 5] = [
        DistributionKind::Rademacher,
        DistributionKind::Bernoulli01,
        DistributionKind::Gaussian,
        DistributionKind::FoldedGaussian,
        DistributionKind::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DistributionKind::Rademacher => "rademacher",
            DistributionKind::Bernoulli01 => "bernoulli01",
            DistributionKind::Gaussian => "gaussian",
            DistributionKind::FoldedGaussian => "folded_gaussian",
            DistributionKind::Custom => "custom",
        }
    }
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistributionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown distribution {s:?}")))
    }
}

/// An entry distribution with mean `μ`, second moment `ν` and the variance
/// proxy `p` of the squared entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionSpec {
    pub kind: DistributionKind,
    pub mu: f64,
    pub nu: f64,
    pub p: f64,
}

impl DistributionSpec {
    pub fn rademacher() -> Self {
        DistributionSpec { kind: DistributionKind::Rademacher, mu: 0.0, nu: 1.0, p: 1.0 }
    }

    pub fn bernoulli01() -> Self {
        DistributionSpec { kind: DistributionKind::Bernoulli01, mu: 0.5, nu: 0.5, p: 0.5 }
    }

    pub fn gaussian() -> Self {
        DistributionSpec { kind: DistributionKind::Gaussian, mu: 0.0, nu: 1.0, p: 1.0 }
    }

    pub fn folded_gaussian() -> Self {
        DistributionSpec { kind: DistributionKind::FoldedGaussian, mu: (2.0 / PI).sqrt(), nu: 1.0, p: 1.0 }
    }

    /// Caller-supplied moments. Requires `ν > 0`, `ν > μ^2` and `p > 0`.
    pub fn custom(mu: f64, nu: f64, p: f64) -> Result<Self> {
        let d = DistributionSpec { kind: DistributionKind::Custom, mu, nu, p };
        d.validate()?;
        Ok(d)
    }

    pub fn of_kind(kind: DistributionKind) -> Result<Self> {
        match kind {
            DistributionKind::Rademacher => Ok(Self::rademacher()),
            DistributionKind::Bernoulli01 => Ok(Self::bernoulli01()),
            DistributionKind::Gaussian => Ok(Self::gaussian()),
            DistributionKind::FoldedGaussian => Ok(Self::folded_gaussian()),
            DistributionKind::Custom => Err(Error::InvalidParameter("custom distributions need explicit moments".into())),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0 && self.variance() > 0.0 && self.p > 0.0) || !self.mu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "distribution needs ν > 0, ν > μ^2 and p > 0 (μ={}, ν={}, p={})",
                self.mu, self.nu, self.p
            )));
        }
        Ok(())
    }

    /// `σ^2 = ν - μ^2`.
    pub fn variance(&self) -> f64 {
        self.nu - self.mu * self.mu
    }

    /// `(6 - 4√2) · min(ν_A^2 / p_A^2, ν_B^2 / p_B^2)`.
    pub fn gamma(&self, other: &DistributionSpec) -> f64 {
        let r = |d: &DistributionSpec| (d.nu / d.p).powi(2);
        (6.0 - 4.0 * 2f64.sqrt()) * r(self).min(r(other))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        Ok(match self.kind {
            DistributionKind::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            DistributionKind::Bernoulli01 => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    0.0
                }
            }
            DistributionKind::Gaussian => StandardNormal.sample(rng),
            DistributionKind::FoldedGaussian => {
                let z: f64 = StandardNormal.sample(rng);
                z.abs()
            }
            DistributionKind::Custom => {
                return Err(Error::Unsupported("custom distributions carry moments only and cannot be sampled".into()))
            }
        })
    }

    /// A `rows x cols` matrix of i.i.d. entries, filled row by row.
    pub fn sample_matrix<R: Rng + ?Sized>(&self, rows: usize, cols: usize, rng: &mut R) -> Result<Matrix> {
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self.sample(rng)?;
            }
        }
        Ok(out)
    }
}
