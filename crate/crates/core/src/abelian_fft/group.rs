use std::fmt;

use crate::{Error, Result};

/// Largest group the crate will allocate dense signals for (2^27 elements).
pub const MAX_GROUP_SIZE: usize = 1 << 27;

/// A finite abelian group `Z_{m1} x ... x Z_{md}`.
///
/// Elements are addressed either by coordinates or by a flat index. The flat
/// index is row-major over the moduli: the last coordinate varies fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<usize>,
    size: usize,
    // strides[i] = product of moduli[i+1..]
    strides: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("a group needs at least one factor".into()));
        }
        if let Some(i) = moduli.iter().position(|&m| m == 0) {
            return Err(Error::InvalidGroup(format!("modulus {i} is zero")));
        }
        let mut size: usize = 1;
        for &m in &moduli {
            size = size
                .checked_mul(m)
                .filter(|&s| s <= MAX_GROUP_SIZE)
                .ok_or_else(|| {
                    Error::TooLarge(format!(
                        "group {moduli:?} exceeds the maximum of {MAX_GROUP_SIZE} elements"
                    ))
                })?;
        }
        let mut strides = vec![1; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        Ok(AbelianGroup { moduli, size, strides })
    }

    /// The cyclic group `Z_m`.
    pub fn cyclic(m: usize) -> Result<Self> {
        Self::new(vec![m])
    }

    /// `Z_m^d`.
    pub fn power(m: usize, d: usize) -> Result<Self> {
        Self::new(vec![m; d])
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn element(&self, coords: Vec<usize>) -> Result<GroupElement> {
        self.check_coords(&coords)?;
        Ok(GroupElement(coords))
    }

    pub fn flat_index(&self, g: &GroupElement) -> usize {
        self.flat_of_coords(&g.0)
    }

    pub(crate) fn flat_of_coords(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.strides)
            .map(|(c, s)| c * s)
            .sum()
    }

    pub fn element_at(&self, flat: usize) -> GroupElement {
        GroupElement(self.coords_of(flat))
    }

    pub(crate) fn coords_of(&self, mut flat: usize) -> Vec<usize> {
        let mut coords = vec![0; self.rank()];
        for (i, &s) in self.strides.iter().enumerate() {
            coords[i] = flat / s;
            flat %= s;
        }
        coords
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.moduli)
                .map(|((a, b), m)| (a + b) % m)
                .collect(),
        )
    }

    pub fn neg(&self, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.moduli)
                .map(|(a, m)| (m - a) % m)
                .collect(),
        )
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.add(g, &self.neg(h))
    }

    /// `g + h` on flat indices.
    pub fn add_flat(&self, g: usize, h: usize) -> usize {
        if self.rank() == 1 {
            let s = g + h;
            return if s >= self.size { s - self.size } else { s };
        }
        let mut out = 0;
        let (mut g, mut h) = (g, h);
        for (&s, &m) in self.strides.iter().zip(&self.moduli) {
            let (a, b) = (g / s, h / s);
            g %= s;
            h %= s;
            let c = a + b;
            out += if c >= m { c - m } else { c } * s;
        }
        out
    }

    pub fn neg_flat(&self, g: usize) -> usize {
        if self.rank() == 1 {
            return (self.size - g) % self.size;
        }
        let mut out = 0;
        let mut g = g;
        for (&s, &m) in self.strides.iter().zip(&self.moduli) {
            let a = g / s;
            g %= s;
            out += ((m - a) % m) * s;
        }
        out
    }

    pub fn sub_flat(&self, g: usize, h: usize) -> usize {
        self.add_flat(g, self.neg_flat(h))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(move |i| self.element_at(i))
    }

    /// Direct product `self x other`; coordinates of `self` come first.
    pub fn product(&self, other: &AbelianGroup) -> Result<AbelianGroup> {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        AbelianGroup::new(moduli)
    }

    fn check_coords(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: coords.len() });
        }
        for (c, m) in coords.iter().zip(&self.moduli) {
            if c >= m {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {c} out of range for modulus {m}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z_{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A group element given by its residues, one per cyclic factor. Frequencies
/// of the dual group are represented by the same type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<usize>);

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Number of non-zero coordinates.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }
}

impl From<Vec<usize>> for GroupElement {
    fn from(v: Vec<usize>) -> Self {
        GroupElement(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert!(AbelianGroup::new(vec![]).is_err());
        assert!(AbelianGroup::new(vec![3, 0]).is_err());
        assert!(AbelianGroup::new(vec![1 << 20, 1 << 20]).is_err());
    }

    #[test]
    fn flat_indexing_is_row_major_bijection() {
        let g = AbelianGroup::new(vec![2, 3, 4]).unwrap();
        assert_eq!(g.size(), 24);
        assert_eq!(g.flat_index(&GroupElement(vec![1, 2, 3])), 12 + 8 + 3);
        assert_eq!(g.flat_index(&GroupElement(vec![0, 0, 1])), 1);
        assert_eq!(g.flat_index(&GroupElement(vec![0, 1, 0])), 4);
        let mut seen = vec![false; g.size()];
        for (i, e) in g.elements().enumerate() {
            let f = g.flat_index(&e);
            assert_eq!(f, i);
            seen[f] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn flat_arithmetic_matches_coordinates() {
        let g = AbelianGroup::new(vec![3, 5, 2]).unwrap();
        for a in 0..g.size() {
            for b in 0..g.size() {
                let (ea, eb) = (g.element_at(a), g.element_at(b));
                assert_eq!(g.add_flat(a, b), g.flat_index(&g.add(&ea, &eb)));
                assert_eq!(g.sub_flat(a, b), g.flat_index(&g.sub(&ea, &eb)));
            }
            assert_eq!(g.add_flat(a, g.neg_flat(a)), 0);
        }
    }

    #[test]
    fn identity_and_weight() {
        let g = AbelianGroup::power(4, 3).unwrap();
        assert!(g.identity().is_identity());
        assert_eq!(GroupElement(vec![0, 2, 3]).weight(), 2);
        assert_eq!(g.to_string(), "Z_4 x Z_4 x Z_4");
    }
}
