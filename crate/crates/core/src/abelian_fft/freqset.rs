use super::AbelianGroup;
use crate::{Error, Result};

/// Structured description of a retained-frequency set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrequencyKind {
    /// Arbitrary frequencies, sorted and de-duplicated flat indices.
    Explicit(Vec<usize>),
    /// `K_1 ∪ ... ∪ K_d` with `K_i = {ξ : ξ_i < width}` over `Z_m^d`.
    Slabs { width: usize },
    /// Over a cyclic group `Z_N`: `{ξ < low} ∪ {ξ ≡ 0 mod period} ∪ {ξ >= high}`.
    ApUnion { low: usize, high: usize, period: usize },
}

/// A set of frequencies of a group's dual, identified with group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencySet {
    group: AbelianGroup,
    kind: FrequencyKind,
    len: usize,
}

impl FrequencySet {
    pub fn explicit(group: AbelianGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            if last >= group.size() {
                return Err(Error::InvalidParameter(format!("frequency {last} outside {group}")));
            }
        }
        let len = members.len();
        Ok(FrequencySet { group, kind: FrequencyKind::Explicit(members), len })
    }

    /// Every frequency of the group.
    pub fn full(group: AbelianGroup) -> Self {
        let members = (0..group.size()).collect();
        let len = group.size();
        FrequencySet { group, kind: FrequencyKind::Explicit(members), len }
    }

    /// Union of the `d` slabs of width `width` in `Z_m^d`.
    pub fn slabs(group: AbelianGroup, width: usize) -> Result<Self> {
        let m = group.moduli()[0];
        if group.moduli().iter().any(|&mi| mi != m) {
            return Err(Error::InvalidGroup(format!("slab sets need equal moduli, got {group}")));
        }
        if width > m {
            return Err(Error::InvalidParameter(format!("slab width {width} exceeds modulus {m}")));
        }
        let d = group.rank() as u32;
        let len = m.pow(d) - (m - width).pow(d);
        Ok(FrequencySet { group, kind: FrequencyKind::Slabs { width }, len })
    }

    /// `{ξ < low} ∪ {ξ ≡ 0 mod period} ∪ {ξ >= high}` in a cyclic group.
    pub fn ap_union(group: AbelianGroup, low: usize, high: usize, period: usize) -> Result<Self> {
        if group.rank() != 1 {
            return Err(Error::InvalidGroup(format!("AP unions need a cyclic group, got {group}")));
        }
        if period == 0 {
            return Err(Error::InvalidParameter("AP period must be positive".into()));
        }
        let n = group.size();
        let (low, high) = (low.min(n), high.min(n));
        let mut set = FrequencySet {
            group,
            kind: FrequencyKind::ApUnion { low, high, period },
            len: 0,
        };
        set.len = set.count_below(n);
        Ok(set)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn kind(&self) -> &FrequencyKind {
        &self.kind
    }

    /// Exact number of members.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, xi: usize) -> bool {
        if xi >= self.group.size() {
            return false;
        }
        match &self.kind {
            FrequencyKind::Explicit(v) => v.binary_search(&xi).is_ok(),
            FrequencyKind::Slabs { width } => {
                let mut rest = xi;
                for &s in self.group.strides() {
                    if rest / s < *width {
                        return true;
                    }
                    rest %= s;
                }
                false
            }
            FrequencyKind::ApUnion { low, high, period } => {
                xi < *low || xi >= *high || xi % period == 0
            }
        }
    }

    /// Rank of `xi` among the members in ascending order, if it is a member.
    pub fn position(&self, xi: usize) -> Option<usize> {
        if !self.contains(xi) {
            return None;
        }
        match &self.kind {
            FrequencyKind::Explicit(v) => v.binary_search(&xi).ok(),
            _ => Some(self.count_below(xi)),
        }
    }

    /// Members in ascending flat order.
    pub fn members(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        match &self.kind {
            FrequencyKind::Explicit(v) => Box::new(v.iter().copied()),
            FrequencyKind::Slabs { width } => {
                let mut out = Vec::with_capacity(self.len);
                slab_members(&self.group, *width, 0, 0, &mut out);
                Box::new(out.into_iter())
            }
            _ => Box::new((0..self.group.size()).filter(move |&x| self.contains(x))),
        }
    }

    /// True when every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &FrequencySet) -> bool {
        if self.group != other.group {
            return false;
        }
        match (&self.kind, &other.kind) {
            (FrequencyKind::Slabs { width: a }, FrequencyKind::Slabs { width: b }) => a <= b,
            _ => self.members().all(|x| other.contains(x)),
        }
    }

    /// Number of members strictly below `x` in flat order.
    fn count_below(&self, x: usize) -> usize {
        match &self.kind {
            FrequencyKind::Explicit(v) => v.partition_point(|&y| y < x),
            FrequencyKind::Slabs { width } => {
                let m = self.group.moduli()[0];
                let d = self.group.rank();
                let mut count = 0;
                let mut inside = false;
                let mut rest = x;
                for (i, &s) in self.group.strides().iter().enumerate() {
                    let v = rest / s;
                    rest %= s;
                    let remaining = (d - i - 1) as u32;
                    let all = m.pow(remaining);
                    let hits = all - (m - width).pow(remaining);
                    count += if inside {
                        v * all
                    } else {
                        v.min(*width) * all + v.saturating_sub(*width) * hits
                    };
                    inside |= v < *width;
                }
                count
            }
            FrequencyKind::ApUnion { low, high, period } => {
                let n = self.group.size();
                if high <= low {
                    return x;
                }
                let ends = x.min(*low) + x.saturating_sub(*high);
                let lo = *low;
                let hi = x.min(*high).max(lo);
                let mults = hi.div_ceil(*period) - lo.div_ceil(*period);
                debug_assert!(ends + mults <= n);
                ends + mults
            }
        }
    }
}

/// Ascending members of a slab union: once a coordinate below `width` has
/// been fixed, the whole remaining block is inside.
fn slab_members(group: &AbelianGroup, width: usize, axis: usize, base: usize, out: &mut Vec<usize>) {
    let stride = group.strides()[axis];
    for v in 0..group.moduli()[axis] {
        let start = base + v * stride;
        if v < width {
            out.extend(start..start + stride);
        } else if axis + 1 < group.rank() {
            slab_members(group, width, axis + 1, start, out);
        }
    }
}
