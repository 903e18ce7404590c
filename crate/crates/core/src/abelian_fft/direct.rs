//! Direct character sums. These are the slow reference paths: full DFTs in
//! `O(|G|^2)`, convolutions in `O(|supp a| |supp b|)` and partial transforms in
//! `O(|K| |supp f|)`.

use rustfft::num_complex::Complex64;

use super::transform::omega_table;
use super::{AbelianGroup, FrequencySet, RestrictedSpectrum, Signal, Spectrum};
use crate::{Error, Result};

/// Character evaluation `ω^{<x,ξ>}` through per-axis root tables.
struct Characters {
    tables: Vec<Vec<Complex64>>,
    group: AbelianGroup,
}

impl Characters {
    fn new(group: &AbelianGroup) -> Self {
        let tables = group.moduli().iter().map(|&m| omega_table(m)).collect();
        Characters { tables, group: group.clone() }
    }

    /// Forward character at coordinates `x` and `xi`.
    fn eval(&self, x: &[usize], xi: &[usize]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for ((t, &a), (&b, &m)) in self.tables.iter().zip(x).zip(xi.iter().zip(self.group.moduli())) {
            acc *= t[(a * b) % m];
        }
        acc
    }
}

fn forward_sum(group: &AbelianGroup, values: &[Complex64], set: impl Iterator<Item = usize>) -> Vec<Complex64> {
    let chars = Characters::new(group);
    let support: Vec<(Vec<usize>, Complex64)> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.re != 0.0 || v.im != 0.0)
        .map(|(g, v)| (group.coords_of(g), *v))
        .collect();
    let norm = 1.0 / (group.size() as f64).sqrt();
    set.map(|xi| {
        let xc = group.coords_of(xi);
        support.iter().map(|(g, v)| v * chars.eval(g, &xc)).sum::<Complex64>() * norm
    })
    .collect()
}

fn inverse_sum(
    group: &AbelianGroup,
    freqs: impl Iterator<Item = usize>,
    values: &[Complex64],
    points: &[usize],
) -> Vec<Complex64> {
    let chars = Characters::new(group);
    let terms: Vec<(Vec<usize>, Complex64)> = freqs
        .zip(values)
        .filter(|(_, v)| v.re != 0.0 || v.im != 0.0)
        .map(|(xi, v)| (group.coords_of(xi), *v))
        .collect();
    let norm = 1.0 / (group.size() as f64).sqrt();
    points
        .iter()
        .map(|&x| {
            let xc = group.coords_of(x);
            terms.iter().map(|(xi, v)| v * chars.eval(&xc, xi).conj()).sum::<Complex64>() * norm
        })
        .collect()
}

/// Full unitary DFT by direct summation.
pub fn dft_direct(signal: &Signal) -> Spectrum {
    let g = signal.group();
    let values = forward_sum(g, signal.values(), 0..g.size());
    Spectrum::new(g.clone(), values).expect("length preserved")
}

/// Full unitary inverse DFT by direct summation.
pub fn idft_direct(spectrum: &Spectrum) -> Signal {
    let g = spectrum.group();
    let points: Vec<usize> = (0..g.size()).collect();
    let values = inverse_sum(g, 0..g.size(), spectrum.values(), &points);
    Signal::new(g.clone(), values).expect("length preserved")
}

/// `(a*b)(x) = Σ_{g+h=x} a(g) b(h)` summed over the supports.
pub fn convolve_direct(a: &Signal, b: &Signal) -> Result<Signal> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    let g = a.group();
    let mut out = Signal::zeros(g.clone());
    let sb: Vec<usize> = b.support();
    for i in a.support() {
        let av = a.values()[i];
        for &j in &sb {
            out.values_mut()[g.add_flat(i, j)] += av * b.values()[j];
        }
    }
    Ok(out)
}

/// Forward transform evaluated only on `set`.
pub fn partial_fft_direct(signal: &Signal, set: &FrequencySet) -> Result<RestrictedSpectrum> {
    if signal.group() != set.group() {
        return Err(Error::GroupMismatch);
    }
    let values = forward_sum(signal.group(), signal.values(), set.members());
    RestrictedSpectrum::new(set.clone(), values)
}

/// Inverse transform of a spectrum supported on its set, evaluated at the flat
/// indices `points`.
pub fn partial_ifft_direct(spectrum: &RestrictedSpectrum, points: &[usize]) -> Result<Vec<Complex64>> {
    let g = spectrum.group();
    if let Some(&p) = points.iter().find(|&&p| p >= g.size()) {
        return Err(Error::InvalidParameter(format!("point {p} outside {g}")));
    }
    Ok(inverse_sum(g, spectrum.set().members(), spectrum.values(), points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian_fft::{fft, ifft};

    fn signal(g: &AbelianGroup, seed: u64) -> Signal {
        // small LCG so the oracle tests need no RNG crate
        let mut s = seed;
        let vals = (0..g.size())
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let re = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let im = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
                Complex64::new(re, im)
            })
            .collect();
        Signal::new(g.clone(), vals).unwrap()
    }

    #[test]
    fn identity_frequency_is_mean() {
        let g = AbelianGroup::new(vec![3, 4]).unwrap();
        let s = signal(&g, 1);
        let k = FrequencySet::explicit(g.clone(), vec![0]).unwrap();
        let r = partial_fft_direct(&s, &k).unwrap();
        let want: Complex64 = s.values().iter().sum::<Complex64>() / 12f64.sqrt();
        assert!((r.values()[0] - want).norm() < 1e-14);
    }

    #[test]
    fn full_set_matches_fast_transform() {
        let g = AbelianGroup::new(vec![3, 3]).unwrap();
        let s = signal(&g, 2);
        let slow = dft_direct(&s);
        let fast = fft(&s);
        for (a, b) in slow.values().iter().zip(fast.values()) {
            assert!((a - b).norm() < 1e-12);
        }
        let back = idft_direct(&fast);
        for (a, b) in back.values().iter().zip(s.values()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn single_frequency_is_a_character() {
        let g = AbelianGroup::cyclic(8).unwrap();
        let k = FrequencySet::explicit(g.clone(), vec![3]).unwrap();
        let r = RestrictedSpectrum::new(k, vec![Complex64::new(1.0, 0.0)]).unwrap();
        let pts: Vec<usize> = (0..8).collect();
        let vals = partial_ifft_direct(&r, &pts).unwrap();
        let w = omega_table(8);
        for (x, v) in vals.iter().enumerate() {
            assert!((v - w[(3 * x) % 8].conj() / 8f64.sqrt()).norm() < 1e-15);
        }
        let dense = ifft(&r.to_dense());
        for (a, b) in dense.values().iter().zip(&vals) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn direct_convolution_of_deltas() {
        let g = AbelianGroup::new(vec![2, 3]).unwrap();
        let a = Signal::delta(g.clone(), g.flat_of_coords(&[1, 2])).unwrap();
        let b = Signal::delta(g.clone(), g.flat_of_coords(&[1, 2])).unwrap();
        let c = convolve_direct(&a, &b).unwrap();
        assert_eq!(c.support(), vec![g.flat_of_coords(&[0, 1])]);
    }
}
