//! Fourier truncation of the vanilla TPP embedding over `Z_{n^3}`.

use crate::abelian_fft::{fft_in_place, ifft_in_place, FrequencySet};
use crate::constructions::{decode_real, embed_pair, vanilla_tpp};
use crate::matrix::{require_shape, require_square, Matrix};
use crate::{Error, Result};

/// Largest group `n^3` accepted by [`tpp_truncated`].
pub const TPP_TRUNCATION_MAX: usize = 1 << 24;

/// `K = {ξ < r n^2 / 2} ∪ {ξ ≡ 0 mod n^2} ∪ {ξ >= n^3 - r n^2 / 2}` in `Z_{n^3}`.
/// At `r = n` this is the whole group.
pub fn tpp_frequency_set(n: usize, r: usize) -> Result<FrequencySet> {
    if n == 0 {
        return Err(Error::InvalidParameter("TPP truncation needs n >= 1".into()));
    }
    if r > n {
        return Err(Error::InvalidParameter(format!("TPP truncation needs r <= n, got r={r}, n={n}")));
    }
    let t = vanilla_tpp(n, n, n)?;
    let (n2, n3) = (n * n, t.group().size());
    let half = r * n2;
    FrequencySet::ap_union(t.group().clone(), half.div_ceil(2), n3 - half / 2, n2)
}

/// Approximate `AB` by keeping only the frequencies of [`tpp_frequency_set`]
/// in the product spectrum of the vanilla TPP embedding. The output is the
/// real part of the truncated inverse, read at the TPP positions.
pub fn tpp_truncated(a: &Matrix, b: &Matrix, r: usize) -> Result<Matrix> {
    let n = require_square(a, "A")?;
    require_shape(b, n, n)?;
    let size = n.checked_pow(3).filter(|&s| s <= TPP_TRUNCATION_MAX).ok_or_else(|| {
        Error::TooLarge(format!("Z_(n^3) for n={n} exceeds the cap of {TPP_TRUNCATION_MAX} elements"))
    })?;
    let set = tpp_frequency_set(n, r)?;
    let t = vanilla_tpp(n, n, n)?;
    let (ea, eb) = embed_pair(a, b, &t, None)?;
    let (mut fa, mut fb) = (ea.into_values(), eb.into_values());
    fft_in_place(t.group(), &mut fa)?;
    fft_in_place(t.group(), &mut fb)?;
    let scale = (size as f64).sqrt();
    for (xi, (x, y)) in fa.iter_mut().zip(&fb).enumerate() {
        *x = if set.contains(xi) { *x * y * scale } else { Default::default() };
    }
    ifft_in_place(t.group(), &mut fa)?;
    let re: Vec<f64> = fa.iter().map(|c| c.re).collect();
    decode_real(&re, &t, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian_fft::{partial_fft_direct, partial_ifft_direct, RestrictedSpectrum};
    use crate::constructions::embed_pair;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn set_sizes() {
        assert_eq!(tpp_frequency_set(4, 4).unwrap().len(), 64);
        // r = 0 keeps only the multiples of n^2
        assert_eq!(tpp_frequency_set(4, 0).unwrap().members().collect::<Vec<_>>(), vec![0, 16, 32, 48]);
        // r = 1: {0..7} ∪ {56..63} ∪ {16, 32, 48}
        assert_eq!(tpp_frequency_set(4, 1).unwrap().len(), 19);
        assert!(tpp_frequency_set(4, 5).is_err());
    }

    #[test]
    fn full_budget_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (a, b) = (random(6, &mut rng), random(6, &mut rng));
        assert!((tpp_truncated(&a, &b, 6).unwrap() - &a * &b).norm() < 1e-9);
        assert_eq!(tpp_truncated(&Matrix::zeros(6, 6), &b, 3).unwrap().norm(), 0.0);
    }

    #[test]
    fn matches_direct_restricted_pipeline() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 4;
        let (a, b) = (random(n, &mut rng), random(n, &mut rng));
        let t = vanilla_tpp(n, n, n).unwrap();
        let (ea, eb) = embed_pair(&a, &b, &t, None).unwrap();
        for r in 0..=n {
            let set = tpp_frequency_set(n, r).unwrap();
            let fa = partial_fft_direct(&ea, &set).unwrap();
            let fb = partial_fft_direct(&eb, &set).unwrap();
            let s = (t.group().size() as f64).sqrt();
            let vals = fa.values().iter().zip(fb.values()).map(|(x, y)| x * y * s).collect();
            let fc = RestrictedSpectrum::new(set, vals).unwrap();
            let pts: Vec<usize> = (0..n * n).map(|p| t.c_index(p / n, p % n)).collect();
            let c = partial_ifft_direct(&fc, &pts).unwrap();
            let fast = tpp_truncated(&a, &b, r).unwrap();
            for (p, v) in c.iter().enumerate() {
                assert!((fast[(p / n, p % n)] - v.re).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn too_large_is_rejected() {
        let a = Matrix::zeros(300, 300);
        assert!(matches!(tpp_truncated(&a, &a, 1), Err(Error::TooLarge(_))));
    }
}
