use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use rustfft::num_complex::Complex64;

use crate::abelian_fft::{real_parts, transform_axes};
use crate::constructions::{cksu_stpp, StppFamily, REAL_RESIDUE_TOL};
use crate::matrix::{padded, require_shape, require_square, Matrix};
use crate::{Error, Result};

/// Standard triple-loop product, the reference for every other algorithm.
pub fn naive_multiply(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch { expected: a.ncols(), got: b.nrows() });
    }
    let (n, p) = (a.nrows(), b.ncols());
    let mut c = Matrix::zeros(n, p);
    for j in 0..p {
        for k in 0..a.ncols() {
            let bkj = b[(k, j)];
            if bkj == 0.0 {
                continue;
            }
            for i in 0..n {
                c[(i, j)] += a[(i, k)] * bkj;
            }
        }
    }
    Ok(c)
}

/// Whether independent invocations run on the rayon pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    Parallel,
}

/// `q = (m-1)^N`, `k = 2^N`, `n0 = q k`: an `n0 x n0` matrix is a `k x k`
/// grid of `q x q` blocks, and `k^2` batch invocations cover all `k^3` block
/// products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockingScheme {
    pub m: usize,
    pub n_factors: usize,
    pub q: usize,
    pub k: usize,
    pub n0: usize,
}

impl BlockingScheme {
    pub fn new(m: usize, n_factors: usize) -> Result<Self> {
        if m < 2 || n_factors < 1 {
            return Err(Error::InvalidParameter(format!("blocking needs m >= 2 and N >= 1, got m={m}, N={n_factors}")));
        }
        let q = (m - 1)
            .checked_pow(n_factors as u32)
            .ok_or_else(|| Error::TooLarge(format!("(m-1)^N for m={m}, N={n_factors}")))?;
        let k = 1usize
            .checked_shl(n_factors as u32)
            .ok_or_else(|| Error::TooLarge(format!("2^N for N={n_factors}")))?;
        let n0 = q.checked_mul(k).ok_or_else(|| Error::TooLarge("n0 = q k".into()))?;
        Ok(BlockingScheme { m, n_factors, q, k, n0 })
    }

    /// Smallest `N` whose `n0` covers `side` at this `m`.
    pub fn smallest_for(m: usize, side: usize) -> Result<Self> {
        for n_factors in 1..=32 {
            let s = Self::new(m, n_factors)?;
            if s.n0 >= side {
                return Ok(s);
            }
        }
        Err(Error::TooLarge(format!("no blocking with m={m} covers side {side}")))
    }

    /// Zero rows and columns added to reach `n0`.
    pub fn pad(&self, side: usize) -> Result<usize> {
        if side > self.n0 {
            let next = Self::smallest_for(self.m, side).map(|s| s.n_factors);
            return Err(Error::InvalidParameter(format!(
                "side {side} exceeds n0 = {} for m={}, N={}; use a larger N{}",
                self.n0,
                self.m,
                self.n_factors,
                next.map_or(String::new(), |n| format!(" (N={n} suffices)"))
            )));
        }
        Ok(self.n0 - side)
    }
}

/// One convolution over `Z_m^{3N}` computing up to `2^N` products of
/// `q x q` matrices. Placement maps are precomputed once.
pub struct StppMultiplier {
    family: StppFamily,
    a_pos: Vec<Vec<usize>>,
    b_pos: Vec<Vec<usize>>,
    c_pos: Vec<Vec<usize>>,
    invocations: AtomicUsize,
}

impl StppMultiplier {
    pub fn new(m: usize, n_factors: usize) -> Result<Self> {
        let family = cksu_stpp(m, n_factors)?;
        let q = family.q();
        let grid = |f: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
            (0..q).flat_map(|x| (0..q).map(move |y| (x, y))).map(|(x, y)| f(x, y)).collect()
        };
        let a_pos = family.triplets().iter().map(|t| grid(&|i, k| t.a_index(i, k))).collect();
        let b_pos = family.triplets().iter().map(|t| grid(&|k, j| t.b_index(k, j))).collect();
        let c_pos = family.triplets().iter().map(|t| grid(&|i, j| t.c_index(i, j))).collect();
        Ok(StppMultiplier { family, a_pos, b_pos, c_pos, invocations: AtomicUsize::new(0) })
    }

    pub fn family(&self) -> &StppFamily {
        &self.family
    }

    pub fn q(&self) -> usize {
        self.family.q()
    }

    /// Products per invocation, `2^N`.
    pub fn d(&self) -> usize {
        self.family.d()
    }

    /// Convolutions performed so far.
    pub fn invocations(&self) -> usize {
        self.invocations.load(Ordering::Relaxed)
    }

    pub fn reset_invocations(&self) {
        self.invocations.store(0, Ordering::Relaxed);
    }

    /// Multiply up to `2^N` block pairs in one convolution. `fetch_a(α, i, k)`
    /// and `fetch_b(α, k, j)` read the entries of pair `α`; the result holds
    /// `pairs` output blocks.
    fn invoke(
        &self,
        pairs: usize,
        fetch_a: impl Fn(usize, usize, usize) -> f64,
        fetch_b: impl Fn(usize, usize, usize) -> f64,
    ) -> Result<Vec<Matrix>> {
        debug_assert!(pairs <= self.d());
        let q = self.q();
        let group = self.family.group();
        let zero = Complex64::new(0.0, 0.0);
        let mut a = vec![zero; group.size()];
        let mut b = vec![zero; group.size()];
        for alpha in 0..pairs {
            for x in 0..q {
                for y in 0..q {
                    a[self.a_pos[alpha][x * q + y]].re = fetch_a(alpha, x, y);
                    b[self.b_pos[alpha][x * q + y]].re = fetch_b(alpha, x, y);
                }
            }
        }
        transform_axes(group, &mut a, true);
        transform_axes(group, &mut b, true);
        let s = 1.0 / group.size() as f64;
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= *y * s;
        }
        transform_axes(group, &mut a, false);
        let c = real_parts(&a, REAL_RESIDUE_TOL)?;
        self.invocations.fetch_add(1, Ordering::Relaxed);
        Ok((0..pairs)
            .map(|alpha| Matrix::from_fn(q, q, |i, j| c[self.c_pos[alpha][i * q + j]]))
            .collect())
    }

    /// `2^N` independent products `A_α B_α` of `q x q` matrices.
    pub fn multiply_batch(&self, a_list: &[Matrix], b_list: &[Matrix]) -> Result<Vec<Matrix>> {
        for list in [a_list, b_list] {
            if list.len() != self.d() {
                return Err(Error::DimensionMismatch { expected: self.d(), got: list.len() });
            }
            for m in list {
                require_shape(m, self.q(), self.q())?;
            }
        }
        self.invoke(self.d(), |al, i, k| a_list[al][(i, k)], |al, k, j| b_list[al][(k, j)])
    }
}

/// One convolution computing `2^N` products of `(m-1)^N`-sized matrices.
pub fn stpp_batch_multiply(m: usize, n_factors: usize, a_list: &[Matrix], b_list: &[Matrix]) -> Result<Vec<Matrix>> {
    StppMultiplier::new(m, n_factors)?.multiply_batch(a_list, b_list)
}

/// `X Y` for arbitrary shapes through batched block products. Both operands
/// are zero-padded to multiples of `q`. Output block `(i, j)` sums
/// `X_{i,t} Y_{t,j}` over `t` in ascending order, `2^N` block products per
/// invocation; different output blocks are independent.
pub fn blocked_product(mult: &StppMultiplier, x: &Matrix, y: &Matrix, exec: Execution) -> Result<Matrix> {
    if x.ncols() != y.nrows() {
        return Err(Error::DimensionMismatch { expected: x.ncols(), got: y.nrows() });
    }
    let (q, d) = (mult.q(), mult.d());
    let (rb, kb, cb) = (x.nrows().div_ceil(q), x.ncols().div_ceil(q), y.ncols().div_ceil(q));
    let px = padded(x, rb * q, kb * q);
    let py = padded(y, kb * q, cb * q);
    let block = |bi: usize, bj: usize| -> Result<Matrix> {
        let mut acc = Matrix::zeros(q, q);
        for t0 in (0..kb).step_by(d.max(1)) {
            let pairs = d.min(kb - t0);
            let outs = mult.invoke(
                pairs,
                |al, i, k| px[(bi * q + i, (t0 + al) * q + k)],
                |al, k, j| py[((t0 + al) * q + k, bj * q + j)],
            )?;
            for o in outs {
                acc += o;
            }
        }
        Ok(acc)
    };
    let coords: Vec<(usize, usize)> = (0..rb).flat_map(|i| (0..cb).map(move |j| (i, j))).collect();
    let blocks: Vec<Matrix> = match exec {
        Execution::Sequential => coords.iter().map(|&(i, j)| block(i, j)).collect::<Result<_>>()?,
        Execution::Parallel => coords.par_iter().map(|&(i, j)| block(i, j)).collect::<Result<_>>()?,
    };
    let mut out = Matrix::zeros(rb * q, cb * q);
    for (&(i, j), blk) in coords.iter().zip(&blocks) {
        out.view_mut((i * q, j * q), (q, q)).copy_from(blk);
    }
    Ok(padded(&out, x.nrows(), y.ncols()))
}

/// Exact square product via `k^2` invocations over `Z_m^{3N}`. Inputs smaller
/// than `n0` are zero-padded.
pub fn blocked_multiply(m: usize, n_factors: usize, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let mult = StppMultiplier::new(m, n_factors)?;
    blocked_multiply_with(&mult, a, b, Execution::Sequential)
}

pub fn blocked_multiply_with(mult: &StppMultiplier, a: &Matrix, b: &Matrix, exec: Execution) -> Result<Matrix> {
    let side = require_square(a, "A")?;
    require_shape(b, side, side)?;
    let f = mult.family();
    let scheme = BlockingScheme::new(f.m(), f.n_factors())?;
    scheme.pad(side)?;
    let pa = padded(a, scheme.n0, scheme.n0);
    let pb = padded(b, scheme.n0, scheme.n0);
    let c = blocked_product(mult, &pa, &pb, exec)?;
    Ok(padded(&c, side, side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn gaussian(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| StandardNormal.sample(rng))
    }

    fn rel(c: &Matrix, want: &Matrix) -> f64 {
        (c - want).norm() / want.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn naive_basics() {
        let c = naive_multiply(&Matrix::from_element(1, 1, 2.0), &Matrix::from_element(1, 1, 3.0)).unwrap();
        assert_eq!(c[(0, 0)], 6.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = gaussian(5, 5, &mut rng);
        assert_eq!(naive_multiply(&Matrix::identity(5, 5), &a).unwrap(), a);
        let (b, c) = (gaussian(5, 5, &mut rng), gaussian(5, 5, &mut rng));
        let left = naive_multiply(&naive_multiply(&a, &b).unwrap(), &c).unwrap();
        let right = naive_multiply(&a, &naive_multiply(&b, &c).unwrap()).unwrap();
        assert!(rel(&left, &right) < 1e-9);
        assert!(naive_multiply(&Matrix::zeros(2, 3), &Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn batch_small_values() {
        let a1 = Matrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b1 = Matrix::from_row_slice(2, 2, &[5.0, 6.0, 7.0, 8.0]);
        let id = Matrix::identity(2, 2);
        let out = stpp_batch_multiply(3, 1, &[a1, id.clone()], &[b1, id.clone()]).unwrap();
        assert!((&out[0] - Matrix::from_row_slice(2, 2, &[19.0, 22.0, 43.0, 50.0])).abs().max() < 1e-10);
        assert!((&out[1] - id).abs().max() < 1e-10);
    }

    #[test]
    fn batch_n2_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a: Vec<Matrix> = (0..4).map(|_| gaussian(9, 9, &mut rng)).collect();
        let b: Vec<Matrix> = (0..4).map(|_| gaussian(9, 9, &mut rng)).collect();
        let out = stpp_batch_multiply(4, 2, &a, &b).unwrap();
        for i in 0..4 {
            assert!(rel(&out[i], &(&a[i] * &b[i])) < 1e-9);
        }
    }

    #[test]
    fn batch_shape_errors() {
        let id = Matrix::identity(2, 2);
        assert!(stpp_batch_multiply(3, 1, &[id.clone()], &[id.clone()]).is_err());
        assert!(stpp_batch_multiply(3, 1, &[id.clone(), Matrix::identity(3, 3)], &[id.clone(), id]).is_err());
    }

    #[test]
    fn blocked_square_and_padding() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (a, b) = (gaussian(4, 4, &mut rng), gaussian(4, 4, &mut rng));
        assert!(rel(&blocked_multiply(3, 1, &a, &b).unwrap(), &(&a * &b)) < 1e-9);
        let (a, b) = (gaussian(3, 3, &mut rng), gaussian(3, 3, &mut rng));
        assert!(rel(&blocked_multiply(3, 1, &a, &b).unwrap(), &(&a * &b)) < 1e-9);
        let r = gaussian(16, 16, &mut rng);
        assert!(rel(&blocked_multiply(3, 2, &Matrix::identity(16, 16), &r).unwrap(), &r) < 1e-9);
        assert!(matches!(blocked_multiply(3, 1, &Matrix::zeros(5, 5), &Matrix::zeros(5, 5)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn k_squared_invocations() {
        let mult = StppMultiplier::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (a, b) = (gaussian(16, 16, &mut rng), gaussian(16, 16, &mut rng));
        blocked_multiply_with(&mult, &a, &b, Execution::Sequential).unwrap();
        assert_eq!(mult.invocations(), 16);
    }

    #[test]
    fn parallel_matches_sequential_bitwise() {
        let mult = StppMultiplier::new(4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (a, b) = (gaussian(6, 6, &mut rng), gaussian(6, 6, &mut rng));
        let s = blocked_multiply_with(&mult, &a, &b, Execution::Sequential).unwrap();
        let p = blocked_multiply_with(&mult, &a, &b, Execution::Parallel).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn rectangular_blocked_product() {
        let mult = StppMultiplier::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (x, y) = (gaussian(7, 5, &mut rng), gaussian(5, 3, &mut rng));
        let c = blocked_product(&mult, &x, &y, Execution::Sequential).unwrap();
        assert!(rel(&c, &(&x * &y)) < 1e-9);
    }

    #[test]
    fn scheme_sizes() {
        let s = BlockingScheme::new(10, 10).unwrap();
        assert_eq!(s.n0, 18usize.pow(10));
        let s = BlockingScheme::smallest_for(3, 10).unwrap();
        assert_eq!((s.n_factors, s.n0), (2, 16));
        assert_eq!(BlockingScheme::new(3, 1).unwrap().pad(3).unwrap(), 1);
    }
}
