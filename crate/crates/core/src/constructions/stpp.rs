use rustfft::num_complex::Complex64;

use super::embed::{embed_into, Occupancy, REAL_RESIDUE_TOL};
use super::triplet::for_each_mixing_solution;
use super::IndexingTriplet;
use crate::abelian_fft::{real_parts, AbelianGroup, Signal};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// Work cap (in candidate tuples) for the exhaustive STPP check.
pub const STPP_CHECK_CAP: usize = 100_000_000;

/// A family of `2^N` triplets in `Z_m^{3N}` that one convolution multiplies
/// simultaneously. Triplet `α` (an integer whose bits, most significant
/// first, pick the role pattern on each `Z_m^3` factor) has sets of size
/// `(m-1)^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StppFamily {
    group: AbelianGroup,
    m: usize,
    n_factors: usize,
    triplets: Vec<IndexingTriplet>,
}

impl StppFamily {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The number `N` of `Z_m^3` factors.
    pub fn n_factors(&self) -> usize {
        self.n_factors
    }

    /// Block side `q = (m-1)^N`.
    pub fn q(&self) -> usize {
        (self.m - 1).pow(self.n_factors as u32)
    }

    /// Family size `d = 2^N`.
    pub fn d(&self) -> usize {
        self.triplets.len()
    }

    pub fn triplets(&self) -> &[IndexingTriplet] {
        &self.triplets
    }

    pub fn triplet(&self, alpha: usize) -> &IndexingTriplet {
        &self.triplets[alpha]
    }
}

/// The two triplets on `Z_m^3`. Pattern 0 uses axes (1, 2, 3) for
/// (S, T, U) and pattern 1 uses (2, 3, 1). Each set is its axis minus the
/// identity, ordered so that `S(i)` sits at `-(i+1)` and `T(k)`, `U(j)` at
/// `k+1`, `j+1`. Then `A[i][k]` of pattern 0 lands on `x^{i+1} y^{k+1}`.
fn base_triplets(m: usize) -> Result<[IndexingTriplet; 2]> {
    let h = AbelianGroup::power(m, 3)?;
    let axis = |ax: usize, v: usize| {
        let mut c = [0usize; 3];
        c[ax] = v;
        h.flat_of_coords(&c)
    };
    let make = |sa: usize, ta: usize, ua: usize| {
        IndexingTriplet::new(
            h.clone(),
            (0..m - 1).map(|i| axis(sa, m - 1 - i)).collect(),
            (0..m - 1).map(|k| axis(ta, k + 1)).collect(),
            (0..m - 1).map(|j| axis(ua, j + 1)).collect(),
        )
    };
    Ok([make(0, 1, 2)?, make(1, 2, 0)?])
}

/// The CKSU family in `Z_m^{3N}`: `2^N` triplets of size `(m-1)^N`.
pub fn cksu_stpp(m: usize, n_factors: usize) -> Result<StppFamily> {
    if m < 2 || n_factors < 1 {
        return Err(Error::InvalidParameter(format!("CKSU family needs m >= 2 and N >= 1, got m={m}, N={n_factors}")));
    }
    let size = (m as u128).checked_pow(3 * n_factors as u32);
    let group = AbelianGroup::power(m, 3 * n_factors).map_err(|_| {
        Error::TooLarge(format!(
            "Z_{m}^{} needs {} elements, above the limit of {}",
            3 * n_factors,
            size.map_or("more than 2^128".to_string(), |s| s.to_string()),
            crate::abelian_fft::MAX_GROUP_SIZE
        ))
    })?;
    let base = base_triplets(m)?;
    let mut triplets = Vec::with_capacity(1 << n_factors);
    for alpha in 0..(1usize << n_factors) {
        let mut t = base[(alpha >> (n_factors - 1)) & 1].clone();
        for l in 1..n_factors {
            t = t.product(&base[(alpha >> (n_factors - 1 - l)) & 1])?;
        }
        triplets.push(t);
    }
    Ok(StppFamily { group, m, n_factors, triplets })
}

/// Exhaustive simultaneous triple product check: every solution of
/// `(-s + t) + (-t' + u) = -s' + u'` with `(s, t)` from triplet `a`,
/// `(t', u)` from `b` and `(s', u')` from `c` must have `a = b = c`, `t = t'`,
/// `s = s'` and `u = u'`. This covers the marginal TPP of each triplet.
pub fn verify_stpp(f: &StppFamily) -> Result<bool> {
    let (d, q) = (f.d(), f.q());
    let work = d.saturating_mul(d).saturating_mul(q.saturating_pow(4));
    if work > STPP_CHECK_CAP {
        return Err(Error::TooLarge(format!(
            "exhaustive STPP check needs {work} candidate tuples, cap is {STPP_CHECK_CAP}"
        )));
    }
    Ok(for_each_mixing_solution(f.triplets(), |[a, b, c], [i, k, k2, j, i2, j2]| {
        a == b && b == c && i == i2 && k == k2 && j == j2
    }))
}

/// Embed a batch of `2^N` pairs, pair `α` through triplet `α`.
pub fn embed_stpp_batch(f: &StppFamily, a_list: &[Matrix], b_list: &[Matrix]) -> Result<(Signal, Signal)> {
    for list in [a_list, b_list] {
        if list.len() != f.d() {
            return Err(Error::DimensionMismatch { expected: f.d(), got: list.len() });
        }
    }
    let mut a = Signal::zeros(f.group().clone());
    let mut b = Signal::zeros(f.group().clone());
    let mut occ = Occupancy::new(f.group().size());
    for (t, (am, bm)) in f.triplets().iter().zip(a_list.iter().zip(b_list)) {
        embed_into(&mut a, &mut b, Some(&mut occ), am, bm, t, None)?;
    }
    Ok((a, b))
}

/// Read every product of a batch from one convolution output.
pub fn decode_stpp(c: &Signal, f: &StppFamily) -> Result<Vec<Matrix>> {
    if c.group() != f.group() {
        return Err(Error::GroupMismatch);
    }
    let re = real_parts(c.values(), REAL_RESIDUE_TOL)?;
    Ok(decode_stpp_real(&re, f))
}

fn decode_stpp_real(c: &[f64], f: &StppFamily) -> Vec<Matrix> {
    let q = f.q();
    f.triplets()
        .iter()
        .map(|t| Matrix::from_fn(q, q, |i, j| c[t.c_index(i, j)]))
        .collect()
}

/// Embed `(A1, B1)` and `(A2, B2)` into `Z_m^3`, `m = side + 1`. The first
/// signal is supported on `X1 ∪ X2`, the second on `X2 ∪ X3`.
pub fn embed_stpp_pair(a1: &Matrix, a2: &Matrix, b1: &Matrix, b2: &Matrix) -> Result<(Signal, Signal)> {
    let side = a1.nrows();
    if side == 0 {
        return Err(Error::InvalidParameter("STPP pair needs non-empty matrices".into()));
    }
    let f = cksu_stpp(side + 1, 1)?;
    embed_stpp_batch(&f, &[a1.clone(), a2.clone()], &[b1.clone(), b2.clone()])
}

/// The coordinate planes of `Z_m^3` used by the single-factor family:
/// `X1 = {(x,y,0)}`, `X2 = {(0,x,y)}`, `X3 = {(x,0,y)}` with `x, y != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportSets {
    m: usize,
}

impl SupportSets {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("support sets need m >= 2, got {m}")));
        }
        Ok(SupportSets { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Which of `X1`, `X2`, `X3` (as 1, 2, 3) contains the flat element, if any.
    pub fn region_of(&self, flat: usize) -> Option<u8> {
        let m = self.m;
        let (x, y, z) = (flat / (m * m), (flat / m) % m, flat % m);
        match (x != 0, y != 0, z != 0) {
            (true, true, false) => Some(1),
            (false, true, true) => Some(2),
            (true, false, true) => Some(3),
            _ => None,
        }
    }

    /// Members of `X_i` (i in 1..=3) in ascending flat order.
    pub fn members(&self, i: u8) -> Vec<usize> {
        (0..self.m.pow(3)).filter(|&g| self.region_of(g) == Some(i)).collect()
    }

    /// The output region `X1 ∪ X3` in ascending flat order.
    pub fn output_region(&self) -> Vec<usize> {
        (0..self.m.pow(3)).filter(|&g| matches!(self.region_of(g), Some(1) | Some(3))).collect()
    }

    /// First flat index of `values` that is non-zero outside the given regions.
    pub fn violation(&self, values: &[Complex64], allowed: [u8; 2]) -> Option<usize> {
        values.iter().enumerate().find_map(|(g, v)| {
            let nonzero = v.re != 0.0 || v.im != 0.0;
            let ok = self.region_of(g).is_some_and(|r| allowed.contains(&r));
            (nonzero && !ok).then_some(g)
        })
    }
}
