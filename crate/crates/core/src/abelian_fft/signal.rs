use rustfft::num_complex::Complex64;

use super::{AbelianGroup, FrequencySet};
use crate::{Error, Result};

/// A dense element of the group algebra `C[G]`, flat-indexed.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    group: AbelianGroup,
    values: Vec<Complex64>,
}

/// A dense function on the dual group, indexed by frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    group: AbelianGroup,
    values: Vec<Complex64>,
}

macro_rules! dense_common {
    ($t:ident) => {
        impl $t {
            pub fn new(group: AbelianGroup, values: Vec<Complex64>) -> Result<Self> {
                if values.len() != group.size() {
                    return Err(Error::DimensionMismatch { expected: group.size(), got: values.len() });
                }
                Ok($t { group, values })
            }

            pub fn zeros(group: AbelianGroup) -> Self {
                let values = vec![Complex64::new(0.0, 0.0); group.size()];
                $t { group, values }
            }

            pub fn from_real(group: AbelianGroup, values: &[f64]) -> Result<Self> {
                Self::new(group, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            }

            pub fn group(&self) -> &AbelianGroup {
                &self.group
            }

            pub fn values(&self) -> &[Complex64] {
                &self.values
            }

            pub fn values_mut(&mut self) -> &mut [Complex64] {
                &mut self.values
            }

            pub fn into_values(self) -> Vec<Complex64> {
                self.values
            }

            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }

            pub fn norm_l2(&self) -> f64 {
                self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
            }

            pub fn norm_l1(&self) -> f64 {
                self.values.iter().map(|v| v.norm()).sum()
            }

            pub fn norm_inf(&self) -> f64 {
                self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
            }

            /// Flat indices of the non-zero entries.
            pub fn support(&self) -> Vec<usize> {
                self.values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.re != 0.0 || v.im != 0.0)
                    .map(|(i, _)| i)
                    .collect()
            }
        }
    };
}

dense_common!(Signal);
dense_common!(Spectrum);

impl Signal {
    /// A delta at flat index `g`.
    pub fn delta(group: AbelianGroup, g: usize) -> Result<Self> {
        if g >= group.size() {
            return Err(Error::InvalidParameter(format!("element {g} outside {group}")));
        }
        let mut s = Signal::zeros(group);
        s.values[g] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Real parts, provided every imaginary part is at most
    /// `rel_tol * max(|value|)` in magnitude.
    pub fn to_real(&self, rel_tol: f64) -> Result<Vec<f64>> {
        real_parts(&self.values, rel_tol)
    }
}

pub(crate) fn real_parts(values: &[Complex64], rel_tol: f64) -> Result<Vec<f64>> {
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let residue = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    let tolerance = rel_tol * scale.max(f64::MIN_POSITIVE);
    if residue > tolerance {
        return Err(Error::ImaginaryResidue { residue, tolerance });
    }
    Ok(values.iter().map(|v| v.re).collect())
}

/// Spectrum values on a frequency set `K` only, stored in ascending
/// flat-index order of the members of `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedSpectrum {
    set: FrequencySet,
    values: Vec<Complex64>,
}

impl RestrictedSpectrum {
    pub fn new(set: FrequencySet, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != set.len() {
            return Err(Error::DimensionMismatch { expected: set.len(), got: values.len() });
        }
        Ok(RestrictedSpectrum { set, values })
    }

    /// Restrict a dense spectrum to `set`.
    pub fn restrict(spectrum: &Spectrum, set: &FrequencySet) -> Result<Self> {
        if spectrum.group() != set.group() {
            return Err(Error::GroupMismatch);
        }
        let values = set.members().map(|xi| spectrum.values()[xi]).collect();
        Ok(RestrictedSpectrum { set: set.clone(), values })
    }

    pub fn set(&self) -> &FrequencySet {
        &self.set
    }

    pub fn group(&self) -> &AbelianGroup {
        self.set.group()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// Value at frequency `xi` (zero outside the set).
    pub fn get(&self, xi: usize) -> Complex64 {
        match self.set.position(xi) {
            Some(p) => self.values[p],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Zero-fill back to a dense spectrum.
    pub fn to_dense(&self) -> Spectrum {
        let mut out = Spectrum::zeros(self.group().clone());
        for (xi, v) in self.set.members().zip(&self.values) {
            out.values_mut()[xi] = *v;
        }
        out
    }

    pub fn norm_l2(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_is_checked() {
        let g = AbelianGroup::cyclic(4).unwrap();
        assert!(Signal::new(g.clone(), vec![Complex64::new(0.0, 0.0); 3]).is_err());
        assert!(Signal::from_real(g, &[1.0, 2.0, 3.0, 4.0]).is_ok());
    }

    #[test]
    fn norms_and_support() {
        let g = AbelianGroup::cyclic(4).unwrap();
        let s = Signal::from_real(g, &[3.0, 0.0, -4.0, 0.0]).unwrap();
        assert_eq!(s.norm_l2(), 5.0);
        assert_eq!(s.norm_l1(), 7.0);
        assert_eq!(s.norm_inf(), 4.0);
        assert_eq!(s.support(), vec![0, 2]);
    }

    #[test]
    fn real_extraction_checks_residue() {
        let g = AbelianGroup::cyclic(2).unwrap();
        let ok = Signal::new(g.clone(), vec![Complex64::new(1.0, 1e-12), Complex64::new(2.0, 0.0)]).unwrap();
        assert_eq!(ok.to_real(1e-8).unwrap(), vec![1.0, 2.0]);
        let bad = Signal::new(g, vec![Complex64::new(1.0, 0.1), Complex64::new(2.0, 0.0)]).unwrap();
        assert!(matches!(bad.to_real(1e-8), Err(Error::ImaginaryResidue { .. })));
    }
}
