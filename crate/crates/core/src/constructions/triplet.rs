use std::collections::{HashMap, HashSet};

use crate::abelian_fft::{AbelianGroup, GroupElement};
use crate::{Error, Result};

/// Largest set size the exhaustive property checks accept by default.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 8;

/// Ordered sets `(S, T, U)` in a group. A matrix `A` (|S| x |T|) is placed at
/// `-S(i) + T(k)`, `B` (|T| x |U|) at `-T(k) + U(j)`, and the product is read
/// at `-S(i) + U(j)`.
///
/// The triplet is an indexing triplet in the strict sense when both placement
/// maps are injective; [`IndexingTriplet::is_indexing_triplet`] checks this.
/// Approximate constructions such as [`ap_triplet`] need not satisfy it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexingTriplet {
    group: AbelianGroup,
    s: Vec<usize>,
    t: Vec<usize>,
    u: Vec<usize>,
}

impl IndexingTriplet {
    /// Build from flat indices.
    pub fn new(group: AbelianGroup, s: Vec<usize>, t: Vec<usize>, u: Vec<usize>) -> Result<Self> {
        for x in s.iter().chain(&t).chain(&u) {
            if *x >= group.size() {
                return Err(Error::InvalidParameter(format!("element {x} outside {group}")));
            }
        }
        if s.is_empty() || t.is_empty() || u.is_empty() {
            return Err(Error::InvalidParameter("triplet sets must be non-empty".into()));
        }
        Ok(IndexingTriplet { group, s, t, u })
    }

    pub fn from_elements(
        group: AbelianGroup,
        s: &[GroupElement],
        t: &[GroupElement],
        u: &[GroupElement],
    ) -> Result<Self> {
        let flat = |v: &[GroupElement]| -> Result<Vec<usize>> {
            v.iter()
                .map(|g| group.element(g.0.clone()).map(|e| group.flat_index(&e)))
                .collect()
        };
        let (s, t, u) = (flat(s)?, flat(t)?, flat(u)?);
        Self::new(group, s, t, u)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// `|S|`, the row count of `A` and `C`. Equals the common size for square triplets.
    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// `(|S|, |T|, |U|)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.s.len(), self.t.len(), self.u.len())
    }

    pub fn is_square(&self) -> bool {
        self.s.len() == self.t.len() && self.t.len() == self.u.len()
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn s_elements(&self) -> Vec<GroupElement> {
        self.s.iter().map(|&x| self.group.element_at(x)).collect()
    }

    pub fn t_elements(&self) -> Vec<GroupElement> {
        self.t.iter().map(|&x| self.group.element_at(x)).collect()
    }

    pub fn u_elements(&self) -> Vec<GroupElement> {
        self.u.iter().map(|&x| self.group.element_at(x)).collect()
    }

    /// Position of `A[i][k]`.
    pub fn a_index(&self, i: usize, k: usize) -> usize {
        self.group.sub_flat(self.t[k], self.s[i])
    }

    /// Position of `B[k][j]`.
    pub fn b_index(&self, k: usize, j: usize) -> usize {
        self.group.sub_flat(self.u[j], self.t[k])
    }

    /// Position read for `C[i][j]`.
    pub fn c_index(&self, i: usize, j: usize) -> usize {
        self.group.sub_flat(self.u[j], self.s[i])
    }

    /// `(|-S+T|, |-T+U|)` as sets.
    pub fn difference_set_sizes(&self) -> (usize, usize) {
        let (ns, nt, nu) = self.dims();
        let a: HashSet<usize> = (0..ns).flat_map(|i| (0..nt).map(move |k| (i, k))).map(|(i, k)| self.a_index(i, k)).collect();
        let b: HashSet<usize> = (0..nt).flat_map(|k| (0..nu).map(move |j| (k, j))).map(|(k, j)| self.b_index(k, j)).collect();
        (a.len(), b.len())
    }

    /// Both placement maps are injective: `|-S+T| = |S||T|` and `|-T+U| = |T||U|`.
    pub fn is_indexing_triplet(&self) -> bool {
        let (ns, nt, nu) = self.dims();
        self.difference_set_sizes() == (ns * nt, nt * nu)
    }

    /// Reorder the sets: the new `S(i)` is the old `S(ps[i])`, and so on.
    pub fn permuted(&self, ps: &[usize], pt: &[usize], pu: &[usize]) -> Result<Self> {
        let pick = |v: &[usize], p: &[usize]| -> Result<Vec<usize>> {
            if !is_permutation(p, v.len()) {
                return Err(Error::InvalidParameter(format!("not a permutation of {} indices", v.len())));
            }
            Ok(p.iter().map(|&i| v[i]).collect())
        };
        Ok(IndexingTriplet {
            group: self.group.clone(),
            s: pick(&self.s, ps)?,
            t: pick(&self.t, pt)?,
            u: pick(&self.u, pu)?,
        })
    }

    /// The triplet `(-S, T, U)`: `A` then sits at `S(i) + T(k)` and `C` is read
    /// at `S(i) + U(j)`.
    pub fn with_negated_s(&self) -> Self {
        let s = self.s.iter().map(|&x| self.group.neg_flat(x)).collect();
        IndexingTriplet { group: self.group.clone(), s, t: self.t.clone(), u: self.u.clone() }
    }

    /// Product triplet in `G1 x G2`. Index `i = i1 * |S2| + i2` maps to
    /// `(S1(i1), S2(i2))`, so block structure follows the Kronecker product.
    pub fn product(&self, other: &IndexingTriplet) -> Result<Self> {
        let group = self.group.product(&other.group)?;
        let w = other.group.size();
        let mul = |a: &[usize], b: &[usize]| -> Vec<usize> {
            a.iter().flat_map(|&x| b.iter().map(move |&y| x * w + y)).collect()
        };
        Ok(IndexingTriplet {
            group,
            s: mul(&self.s, &other.s),
            t: mul(&self.t, &other.t),
            u: mul(&self.u, &other.u),
        })
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in p {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// `S = {x·mp}`, `T = {x·p}`, `U = {x}` in `Z_{nmp}`, realizing `<n, m, p>`.
pub fn vanilla_tpp(n: usize, m: usize, p: usize) -> Result<IndexingTriplet> {
    if n == 0 || m == 0 || p == 0 {
        return Err(Error::InvalidParameter("vanilla TPP needs n, m, p >= 1".into()));
    }
    let size = n
        .checked_mul(m)
        .and_then(|x| x.checked_mul(p))
        .ok_or_else(|| Error::TooLarge(format!("Z_(n m p) for ({n}, {m}, {p})")))?;
    let group = AbelianGroup::cyclic(size)?;
    IndexingTriplet::new(
        group,
        (0..n).map(|x| x * m * p).collect(),
        (0..m).map(|x| x * p).collect(),
        (0..p).collect(),
    )
}

/// `S = {rn·i}`, `T = {(r-1)·i}`, `U = {r·i}` in `Z_{r n^2}`.
pub fn ap_triplet(n: usize, r: usize) -> Result<IndexingTriplet> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameter("AP triplet needs n, r >= 1".into()));
    }
    if r > n {
        return Err(Error::InvalidParameter(format!("AP triplet needs r <= n, got r={r}, n={n}")));
    }
    let size = r
        .checked_mul(n)
        .and_then(|x| x.checked_mul(n))
        .ok_or_else(|| Error::TooLarge(format!("Z_(r n^2) for n={n}, r={r}")))?;
    let group = AbelianGroup::cyclic(size)?;
    IndexingTriplet::new(
        group,
        (0..n).map(|i| r * n * i).collect(),
        (0..n).map(|i| (r - 1) * i).collect(),
        (0..n).map(|i| r * i).collect(),
    )
}

/// Every solution of `(-s + t) + (-t' + u) = -s' + u'` over index tuples,
/// with `(s, t)` from `a`, `(t', u)` from `b` and `(s', u')` from `c`. Calls
/// `hit(a, b, c, i, k, k2, j, i2, j2)` for each solution.
pub(crate) fn for_each_mixing_solution(
    triplets: &[IndexingTriplet],
    mut hit: impl FnMut([usize; 3], [usize; 6]) -> bool,
) -> bool {
    let group = triplets[0].group();
    let mut reads: HashMap<usize, Vec<(usize, usize, usize)>> = HashMap::new();
    for (ci, t) in triplets.iter().enumerate() {
        let (ns, _, nu) = t.dims();
        for i in 0..ns {
            for j in 0..nu {
                reads.entry(t.c_index(i, j)).or_default().push((ci, i, j));
            }
        }
    }
    for (ai, ta) in triplets.iter().enumerate() {
        let (ns, nt, _) = ta.dims();
        for (bi, tb) in triplets.iter().enumerate() {
            let (_, nt2, nu) = tb.dims();
            for i in 0..ns {
                for k in 0..nt {
                    let pa = ta.a_index(i, k);
                    for k2 in 0..nt2 {
                        for j in 0..nu {
                            let x = group.add_flat(pa, tb.b_index(k2, j));
                            if let Some(list) = reads.get(&x) {
                                for &(ci, i2, j2) in list {
                                    if !hit([ai, bi, ci], [i, k, k2, j, i2, j2]) {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Exhaustive triple product property check with the default cap on set size.
pub fn verify_tpp(t: &IndexingTriplet) -> Result<bool> {
    verify_tpp_with_cap(t, DEFAULT_EXHAUSTIVE_CAP)
}

/// True iff `s1 - s2 + t1 - t2 + u1 - u2 = 0` forces equal indices.
/// Errors when any set is larger than `cap`.
pub fn verify_tpp_with_cap(t: &IndexingTriplet, cap: usize) -> Result<bool> {
    let (ns, nt, nu) = t.dims();
    if ns.max(nt).max(nu) > cap {
        return Err(Error::TooLarge(format!(
            "exhaustive TPP check capped at set size {cap}, got {:?}; count ATPQ instead",
            t.dims()
        )));
    }
    Ok(for_each_mixing_solution(std::slice::from_ref(t), |_, [i, k, k2, j, i2, j2]| {
        i == i2 && k == k2 && j == j2
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanilla_sets_for_222() {
        let t = vanilla_tpp(2, 2, 2).unwrap();
        assert_eq!(t.group().size(), 8);
        assert_eq!(t.s(), &[0, 4]);
        assert_eq!(t.t(), &[0, 2]);
        assert_eq!(t.u(), &[0, 1]);
        assert!(verify_tpp(&t).unwrap());
    }

    #[test]
    fn vanilla_trivial() {
        let t = vanilla_tpp(1, 1, 1).unwrap();
        assert_eq!(t.group().size(), 1);
        assert_eq!((t.s(), t.t(), t.u()), (&[0][..], &[0][..], &[0][..]));
    }

    #[test]
    fn vanilla_small_all_tpp() {
        for n in 1..=4 {
            for m in 1..=4 {
                for p in 1..=4 {
                    let t = vanilla_tpp(n, m, p).unwrap();
                    assert!(verify_tpp(&t).unwrap(), "({n},{m},{p})");
                    assert!(t.is_indexing_triplet());
                }
            }
        }
    }

    #[test]
    fn vanilla_a_support_is_progression_with_difference_p() {
        let (n, m, p) = (3, 4, 5);
        let t = vanilla_tpp(n, m, p).unwrap();
        let mut supp: Vec<usize> = (0..n).flat_map(|i| (0..m).map(move |k| (i, k))).map(|(i, k)| t.a_index(i, k)).collect();
        supp.sort_unstable();
        // -S is S again, so the support is {x mp + y p}: all multiples of p
        assert_eq!(supp, (0..n * m).map(|x| x * p).collect::<Vec<_>>());
    }

    #[test]
    fn ap_sets_for_4_2() {
        let t = ap_triplet(4, 2).unwrap();
        assert_eq!(t.group().size(), 32);
        assert_eq!(t.s(), &[0, 8, 16, 24]);
        assert_eq!(t.t(), &[0, 1, 2, 3]);
        assert_eq!(t.u(), &[0, 2, 4, 6]);
        assert!(!verify_tpp(&t).unwrap());
        assert!(ap_triplet(3, 4).is_err());
    }

    #[test]
    fn ap_full_width_is_tpp() {
        for n in 1..=6 {
            let t = ap_triplet(n, n).unwrap();
            assert!(verify_tpp(&t).unwrap());
        }
    }

    #[test]
    fn ap_difference_sets() {
        // r = 1 puts all of T at 0
        let t = ap_triplet(2, 1).unwrap();
        assert_eq!(t.difference_set_sizes(), (2, 2));
        assert!(!t.is_indexing_triplet());
        let t = ap_triplet(4, 4).unwrap();
        assert!(t.is_indexing_triplet());
        let t = ap_triplet(4, 2).unwrap();
        assert_eq!(t.difference_set_sizes().0, 16);
        assert!(t.difference_set_sizes().1 < 16);
    }

    #[test]
    fn cap_is_enforced() {
        let t = vanilla_tpp(9, 1, 1).unwrap();
        assert!(matches!(verify_tpp(&t), Err(Error::TooLarge(_))));
        assert!(verify_tpp_with_cap(&t, 9).unwrap());
    }

    #[test]
    fn permutation_and_negation() {
        let t = vanilla_tpp(2, 3, 2).unwrap();
        let p = t.permuted(&[1, 0], &[2, 0, 1], &[0, 1]).unwrap();
        assert_eq!(p.s(), &[6, 0]);
        assert_eq!(p.t(), &[4, 0, 2]);
        assert!(t.permuted(&[0, 0], &[0, 1, 2], &[0, 1]).is_err());
        let neg = t.with_negated_s();
        assert_eq!(neg.a_index(1, 1), 6 + 2);
    }
}
