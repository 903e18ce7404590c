//! Closed forms for the spectra of the single-factor STPP embedding over `Z_m^3`.
//!
//! `X1 = {(x,y,0)}`, `X2 = {(0,y,z)}`, `X3 = {(x,0,z)}` with the free
//! coordinates nonzero. Transforms are unitary.

use crate::{Error, Result};

use super::distribution::DistributionSpec;

/// Which embedded signal: `a` lives on `X1 ∪ X2`, `b` on `X2 ∪ X3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalSide {
    A,
    B,
}

fn check_region(i: usize) -> Result<()> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidParameter(format!("region index must be 1, 2 or 3, got {i}")));
    }
    Ok(())
}

/// `m^{3/2} · 1̂_{X_i}(ξ)`, an integer: the free coordinates of `X_i` are `i`
/// and `i+1` (cyclically), and `Σ_{x≠0} ω^{xξ}` is `m-1` at `ξ = 0`, else `-1`.
pub fn indicator_sum(m: usize, i: usize, xi: [usize; 3]) -> Result<i64> {
    check_region(i)?;
    let m = m as i64;
    let f = |c: usize| if c % m as usize == 0 { m - 1 } else { -1 };
    Ok(f(xi[i - 1]) * f(xi[i % 3]))
}

/// `1̂_{X_i}(ξ) = m^{-3/2} · {(m-1)^2, -(m-1), 1}` by how many of the two free
/// coordinates of `ξ` are zero.
pub fn indicator_spectrum(m: usize, i: usize, xi: [usize; 3]) -> Result<f64> {
    Ok(indicator_sum(m, i, xi)? as f64 / (m as f64).powf(1.5))
}

/// `E[â(ξ) · conj(â(η))]` for i.i.d. entries placed on the support of the
/// given side, with `δ = ξ - η` and `ξ, η` both having all coordinates nonzero
/// (for instance both outside the slab union of any width `r >= 1`):
/// `4 μ^2 / m^3 + σ^2 m^{-3} Σ_{x ∈ support} ω^{x·δ}`.
pub fn c_ab_formula(dist: &DistributionSpec, side: SignalSide, m: usize, delta: [usize; 3]) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("need m >= 2, got {m}")));
    }
    let regions = match side {
        SignalSide::A => [1, 2],
        SignalSide::B => [2, 3],
    };
    let mut sum = 0i64;
    for i in regions {
        sum += indicator_sum(m, i, delta)?;
    }
    let m3 = (m as f64).powi(3);
    Ok(4.0 * dist.mu * dist.mu / m3 + dist.variance() * sum as f64 / m3)
}

/// `T(δ) = Σ_{x ∈ X1 ∪ X3} ω^{x·δ}`. The region is closed under negation, so
/// the sum is a real integer.
pub fn t_delta(m: usize, delta: [usize; 3]) -> Result<i64> {
    Ok(indicator_sum(m, 1, delta)? + indicator_sum(m, 3, delta)?)
}

/// `S(δ) = |K^c ∩ (K^c - δ)|` for `K^c = [r, m)^3`: per axis, the overlap of
/// two cyclic arcs of length `m - r` offset by `δ_i`.
pub fn s_delta(m: usize, r: usize, delta: [usize; 3]) -> Result<u64> {
    if r > m {
        return Err(Error::InvalidParameter(format!("slab width r={r} exceeds m={m}")));
    }
    let w = m - r;
    Ok(delta
        .iter()
        .map(|&d| {
            let d = d % m;
            (w.saturating_sub(d) + w.saturating_sub(m - d)) as u64
        })
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rustfft::num_complex::Complex64;
    use std::f64::consts::PI;

    fn direct(m: usize, pts: &[[usize; 3]], xi: [usize; 3]) -> Complex64 {
        pts.iter()
            .map(|x| {
                let dot: usize = (0..3).map(|a| x[a] * xi[a]).sum();
                Complex64::from_polar(1.0, -2.0 * PI * (dot % m) as f64 / m as f64)
            })
            .sum()
    }

    fn region(m: usize, i: usize) -> Vec<[usize; 3]> {
        let mut v = Vec::new();
        for a in 1..m {
            for b in 1..m {
                v.push(match i {
                    1 => [a, b, 0],
                    2 => [0, a, b],
                    _ => [b, 0, a],
                });
            }
        }
        v
    }

    #[test]
    fn listed_values() {
        assert!((indicator_spectrum(3, 1, [0, 0, 2]).unwrap() - 4.0 / 27f64.sqrt()).abs() < 1e-15);
        assert!((indicator_spectrum(3, 1, [0, 1, 0]).unwrap() + 2.0 / 27f64.sqrt()).abs() < 1e-15);
        assert!((indicator_spectrum(5, 2, [3, 1, 2]).unwrap() - 1.0 / 125f64.sqrt()).abs() < 1e-15);
        assert_eq!(t_delta(5, [0, 0, 0]).unwrap(), 32);
        assert_eq!(t_delta(5, [1, 2, 3]).unwrap(), 2);
        assert_eq!(s_delta(6, 2, [0, 0, 0]).unwrap(), 64);
        assert!(indicator_spectrum(3, 4, [0, 0, 0]).is_err());
    }

    #[test]
    fn closed_forms_match_direct_sums() {
        for m in 2..=6 {
            let (r1, r3) = (region(m, 1), region(m, 3));
            let union: Vec<_> = r1.iter().chain(&r3).copied().collect();
            for x in 0..m * m * m {
                let xi = [x / (m * m), (x / m) % m, x % m];
                for i in 1..=3 {
                    let d = direct(m, &region(m, i), xi);
                    assert!((d.re - indicator_sum(m, i, xi).unwrap() as f64).abs() < 1e-9);
                    assert!(d.im.abs() < 1e-9);
                }
                let t = direct(m, &union, xi);
                assert!((t.re - t_delta(m, xi).unwrap() as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn s_delta_matches_counting() {
        for m in 1..=6 {
            for r in 0..=m {
                for x in 0..m * m * m {
                    let d = [x / (m * m), (x / m) % m, x % m];
                    let mut count = 0;
                    for y in 0..m * m * m {
                        let p = [y / (m * m), (y / m) % m, y % m];
                        if (0..3).all(|a| p[a] >= r && (p[a] + d[a]) % m >= r) {
                            count += 1;
                        }
                    }
                    assert_eq!(s_delta(m, r, d).unwrap(), count);
                }
            }
        }
    }

    #[test]
    fn c_ab_cases() {
        let rad = DistributionSpec::rademacher();
        assert!((c_ab_formula(&rad, SignalSide::A, 5, [0, 0, 0]).unwrap() - 0.256).abs() < 1e-15);
        assert!((c_ab_formula(&rad, SignalSide::B, 7, [1, 2, 3]).unwrap() - 2.0 / 343.0).abs() < 1e-15);
        let ber = DistributionSpec::bernoulli01();
        // δ = (0, 1, 1): f1 = -(m-1), f2 = 1
        let v = c_ab_formula(&ber, SignalSide::A, 4, [0, 1, 1]).unwrap();
        assert!((v - (4.0 * 0.25 + 0.25 * (-3.0 + 1.0)) / 64.0).abs() < 1e-15);
    }
}
