use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian_fft::convolve;
use crate::constructions::{ap_triplet, decode, embed_pair_with, IndexingTriplet, Placement, Signs};
use crate::matrix::{require_shape, require_square, Matrix};
use crate::Result;

/// Random orderings of `S`, `T`, `U` and the sign vectors `α`, `β`, `γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFormRandomness {
    pub perm_s: Vec<usize>,
    pub perm_t: Vec<usize>,
    pub perm_u: Vec<usize>,
    pub signs: Signs,
}

impl PolyFormRandomness {
    /// Uniform permutations then uniform signs, in that order, from `ChaCha8(seed)`.
    pub fn sample(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = |rng: &mut ChaCha8Rng| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        };
        let (perm_s, perm_t, perm_u) = (perm(&mut rng), perm(&mut rng), perm(&mut rng));
        let signs = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect()
        };
        let (alpha, beta, gamma) = (signs(&mut rng), signs(&mut rng), signs(&mut rng));
        PolyFormRandomness { perm_s, perm_t, perm_u, signs: Signs { alpha, beta, gamma } }
    }

    /// Construction order and all signs `+1`.
    pub fn identity(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        PolyFormRandomness { perm_s: id.clone(), perm_t: id.clone(), perm_u: id, signs: Signs::ones(n, n, n) }
    }

    /// The triplet actually used: the AP triplet reordered, with `S` negated
    /// so that `A[i][k]` sits at `S(i) + T(k)` and `C[i][j]` is read at
    /// `S(i) + U(j)`.
    pub fn triplet(&self, n: usize, r: usize) -> Result<IndexingTriplet> {
        Ok(ap_triplet(n, r)?.permuted(&self.perm_s, &self.perm_t, &self.perm_u)?.with_negated_s())
    }
}

/// Randomized PolyForm over `Z_{r n^2}`: one convolution of the signed
/// embeddings on the arithmetic-progression triplet.
pub fn polyform(a: &Matrix, b: &Matrix, r: usize, seed: u64) -> Result<Matrix> {
    let n = require_square(a, "A")?;
    polyform_with(a, b, r, &PolyFormRandomness::sample(n, seed))
}

pub fn polyform_with(a: &Matrix, b: &Matrix, r: usize, rand: &PolyFormRandomness) -> Result<Matrix> {
    let n = require_square(a, "A")?;
    require_shape(b, n, n)?;
    let t = rand.triplet(n, r)?;
    let (ea, eb) = embed_pair_with(a, b, &t, Some(&rand.signs), Placement::Accumulate)?;
    let c = convolve(&ea, &eb)?;
    decode(&c, &t, Some(&rand.signs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rademacher;

    #[test]
    fn full_width_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (a, b) = (rademacher(10, &mut rng), rademacher(10, &mut rng));
        let c = polyform(&a, &b, 10, 3).unwrap();
        assert!((c - &a * &b).norm() < 1e-9 * 100.0);
    }

    #[test]
    fn zero_input() {
        let b = Matrix::identity(6, 6);
        assert_eq!(polyform(&Matrix::zeros(6, 6), &b, 2, 0).unwrap().norm(), 0.0);
        assert!(polyform(&b, &b, 7, 0).is_err());
    }

    #[test]
    fn global_gamma_flip_is_invisible() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (a, b) = (rademacher(12, &mut rng), rademacher(12, &mut rng));
        let rnd = PolyFormRandomness::sample(12, 9);
        let mut flipped = rnd.clone();
        flipped.signs.gamma.iter_mut().for_each(|g| *g = -*g);
        assert_eq!(polyform_with(&a, &b, 3, &rnd).unwrap(), polyform_with(&a, &b, 3, &flipped).unwrap());
    }

    #[test]
    fn seeded_reproducibility() {
        assert_eq!(PolyFormRandomness::sample(8, 5), PolyFormRandomness::sample(8, 5));
        assert_ne!(PolyFormRandomness::sample(8, 5), PolyFormRandomness::sample(8, 6));
    }
}
