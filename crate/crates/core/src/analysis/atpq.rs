use crate::constructions::IndexingTriplet;
use crate::{Error, Result};

/// Largest `|S| |T| |U|` accepted by [`atpq_count`].
pub const ATPQ_CAP: usize = 1 << 26;

/// Largest `(|S| |T| |U|)^2` accepted by [`atpq_count_naive`].
pub const ATPQ_NAIVE_CAP: usize = 1 << 30;

/// Solutions of `s1 - s2 + t1 - t2 + u1 - u2 = 0` over index tuples, split by
/// the read position `(x, y) = (S(i'), U(j'))` they land on.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionReport {
    pub triplet: IndexingTriplet,
    /// Total solution count `ρ`.
    pub rho: u64,
    /// `buckets[i' * |U| + j']`: tuples `(i, k, k', j)` with
    /// `-S(i) + T(k) - T(k') + U(j) = -S(i') + U(j')`.
    pub buckets: Vec<u64>,
    /// `ρ` minus the `|S| |T| |U|` trivial solutions.
    pub collisions: u64,
}

impl CollisionReport {
    pub fn bucket(&self, i: usize, j: usize) -> u64 {
        self.buckets[i * self.triplet.dims().2 + j]
    }

    /// Mean squared error factor `(ρ - n^3) / n^4` of the signed embedding.
    pub fn error_factor(&self) -> f64 {
        let n = self.triplet.n() as f64;
        self.collisions as f64 / n.powi(4)
    }
}

fn trivial(t: &IndexingTriplet) -> usize {
    let (ns, nt, nu) = t.dims();
    ns * nt * nu
}

/// Count ATPQ solutions with a histogram of `h(g) = #{(i, k, j) : -S(i) + T(k) + U(j) = g}`.
///
/// The equation is `-S(i) + T(k) + U(j) = -S(i') + T(k') + U(j')`, so
/// `ρ = Σ_g h(g)^2`, and bucket `(i', j')` is `Σ_{k'} h(-S(i') + T(k') + U(j'))`.
/// Cost `O(|S| |T| |U| + |G|)`.
pub fn atpq_count(t: &IndexingTriplet) -> Result<CollisionReport> {
    let cells = trivial(t);
    if cells > ATPQ_CAP {
        return Err(Error::TooLarge(format!("ATPQ count over {cells} index triples exceeds {ATPQ_CAP}")));
    }
    let g = t.group();
    let (ns, _, nu) = t.dims();
    let mut h = vec![0u64; g.size()];
    for &s in t.s() {
        for &tk in t.t() {
            let st = g.sub_flat(tk, s);
            for &u in t.u() {
                h[g.add_flat(st, u)] += 1;
            }
        }
    }
    let mut buckets = vec![0u64; ns * nu];
    for i in 0..ns {
        for j in 0..nu {
            let read = t.c_index(i, j);
            buckets[i * nu + j] = t.t().iter().map(|&tk| h[g.add_flat(read, tk)]).sum();
        }
    }
    let rho: u64 = buckets.iter().sum();
    debug_assert_eq!(rho, h.iter().map(|x| x * x).sum::<u64>());
    Ok(CollisionReport { triplet: t.clone(), rho, buckets, collisions: rho - cells as u64 })
}

/// Literal enumeration of all six-tuples. Used as a cross-check.
pub fn atpq_count_naive(t: &IndexingTriplet) -> Result<u64> {
    let cells = trivial(t);
    if cells.saturating_mul(cells) > ATPQ_NAIVE_CAP {
        return Err(Error::TooLarge(format!("naive ATPQ over {cells}^2 tuples exceeds {ATPQ_NAIVE_CAP}")));
    }
    let g = t.group();
    let mut rho = 0u64;
    for &s1 in t.s() {
        for &s2 in t.s() {
            let ds = g.sub_flat(s1, s2);
            for &t1 in t.t() {
                for &t2 in t.t() {
                    let dst = g.add_flat(ds, g.sub_flat(t1, t2));
                    for &u1 in t.u() {
                        for &u2 in t.u() {
                            if g.add_flat(dst, g.sub_flat(u1, u2)) == 0 {
                                rho += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rho)
}

/// `ρ` for the arithmetic-progression triplet of size `n` and width `r`:
/// `n^2 Σ_c n_c^2`, where `n_c` counts indices `i < n` with `i ≡ c (mod r)`.
/// Equals `n^3 ⌊n/r⌋` exactly when `r` divides `n`.
pub fn ap_atpq_closed_form(n: usize, r: usize) -> u64 {
    let (q, rem) = ((n / r) as u64, (n % r) as u64);
    let per_class = rem * (q + 1) * (q + 1) + (r as u64 - rem) * q * q;
    (n as u64).pow(2) * per_class
}

/// Outcome of the abelian lower bound `ρ >= (|S| |T| |U|)^2 / |G|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerBound {
    pub rho: u64,
    /// `⌈(|S| |T| |U|)^2 / |G|⌉`.
    pub bound: u64,
    pub slack: u64,
}

/// Check `ρ >= ⌈n^6 / |G|⌉` (Cauchy-Schwarz on the histogram `h`).
pub fn lower_bound_check(t: &IndexingTriplet) -> Result<LowerBound> {
    let rho = atpq_count(t)?.rho;
    let cells = trivial(t) as u128;
    let bound = (cells * cells).div_ceil(t.group().size() as u128) as u64;
    if rho < bound {
        return Err(Error::BoundViolated(format!("ATPQ {rho} below the abelian lower bound {bound}")));
    }
    Ok(LowerBound { rho, bound, slack: rho - bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ap_triplet, vanilla_tpp, verify_tpp};

    #[test]
    fn known_values() {
        assert_eq!(atpq_count(&ap_triplet(4, 2).unwrap()).unwrap().rho, 128);
        assert_eq!(atpq_count(&vanilla_tpp(3, 3, 3).unwrap()).unwrap().rho, 27);
        assert_eq!(atpq_count(&ap_triplet(8, 2).unwrap()).unwrap().rho, 2048);
        // 3 does not divide 4: classes of sizes 2, 1, 1
        assert_eq!(atpq_count(&ap_triplet(4, 3).unwrap()).unwrap().rho, 16 * 6);
    }

    #[test]
    fn histogram_matches_naive_and_buckets_sum() {
        for n in 1..=5 {
            for r in 1..=n {
                let t = ap_triplet(n, r).unwrap();
                let rep = atpq_count(&t).unwrap();
                assert_eq!(rep.rho, atpq_count_naive(&t).unwrap());
                assert_eq!(rep.rho, ap_atpq_closed_form(n, r));
                assert_eq!(rep.buckets.iter().sum::<u64>(), rep.rho);
                assert_eq!(rep.rho == (n * n * n) as u64, verify_tpp(&t).unwrap());
            }
        }
        let t = vanilla_tpp(2, 3, 2).unwrap();
        assert_eq!(atpq_count(&t).unwrap().rho, atpq_count_naive(&t).unwrap());
    }

    #[test]
    fn lower_bound_slack() {
        assert_eq!(lower_bound_check(&ap_triplet(4, 2).unwrap()).unwrap().slack, 0);
        let v = lower_bound_check(&vanilla_tpp(2, 2, 2).unwrap()).unwrap();
        assert_eq!((v.rho, v.bound, v.slack), (8, 8, 0));
    }

    #[test]
    fn error_factor_at_full_width() {
        assert_eq!(atpq_count(&ap_triplet(6, 6).unwrap()).unwrap().error_factor(), 0.0);
        assert_eq!(atpq_count(&ap_triplet(8, 2).unwrap()).unwrap().error_factor(), 3.0 / 8.0);
    }
}
