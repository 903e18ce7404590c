use rustfft::num_complex::Complex64;

use super::IndexingTriplet;
use crate::abelian_fft::{real_parts, Signal};
use crate::matrix::{require_shape, Matrix};
use crate::{Error, Result};

/// Relative tolerance on the imaginary residue when reading real products.
pub const REAL_RESIDUE_TOL: f64 = 1e-8;

/// Sign vectors for a signed embedding: `α` over rows of `A`, `γ` over the
/// inner index and `β` over columns of `B`. `A[i][k]` is scaled by `α_i γ_k`,
/// `B[k][j]` by `γ_k β_j`, and `C[i][j]` is read back scaled by `α_i β_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signs {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl Signs {
    pub fn ones(rows: usize, inner: usize, cols: usize) -> Self {
        Signs { alpha: vec![1.0; rows], beta: vec![1.0; cols], gamma: vec![1.0; inner] }
    }

    fn check(&self, t: &IndexingTriplet) -> Result<()> {
        let (ns, nt, nu) = t.dims();
        for (len, want) in [(self.alpha.len(), ns), (self.gamma.len(), nt), (self.beta.len(), nu)] {
            if len != want {
                return Err(Error::DimensionMismatch { expected: want, got: len });
            }
        }
        Ok(())
    }
}

/// How coincident placements are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Two index pairs on one group element is an error.
    Strict,
    /// Coincident placements add up, as the polynomial sum does.
    Accumulate,
}

/// Occupied elements of the two signals, for strict placement.
pub(crate) struct Occupancy {
    a: Vec<bool>,
    b: Vec<bool>,
}

impl Occupancy {
    pub(crate) fn new(size: usize) -> Self {
        Occupancy { a: vec![false; size], b: vec![false; size] }
    }
}

fn place(values: &mut [Complex64], occupied: Option<&mut Vec<bool>>, at: usize, v: f64) -> Result<()> {
    if let Some(occ) = occupied {
        if occ[at] {
            return Err(Error::EmbeddingCollision(at));
        }
        occ[at] = true;
    }
    values[at].re += v;
    Ok(())
}

/// Add `A` into `a` at `-S(i) + T(k)` and `B` into `b` at `-T(k) + U(j)`.
/// With an occupancy map, landing on an already used element is an error.
pub(crate) fn embed_into(
    a: &mut Signal,
    b: &mut Signal,
    mut occupied: Option<&mut Occupancy>,
    am: &Matrix,
    bm: &Matrix,
    t: &IndexingTriplet,
    signs: Option<&Signs>,
) -> Result<()> {
    let (ns, nt, nu) = t.dims();
    require_shape(am, ns, nt)?;
    require_shape(bm, nt, nu)?;
    if let Some(s) = signs {
        s.check(t)?;
    }
    let alpha = |i: usize| signs.map_or(1.0, |s| s.alpha[i]);
    let beta = |j: usize| signs.map_or(1.0, |s| s.beta[j]);
    let gamma = |k: usize| signs.map_or(1.0, |s| s.gamma[k]);
    for i in 0..ns {
        for k in 0..nt {
            let v = am[(i, k)] * alpha(i) * gamma(k);
            place(a.values_mut(), occupied.as_mut().map(|o| &mut o.a), t.a_index(i, k), v)?;
        }
    }
    for k in 0..nt {
        for j in 0..nu {
            let v = bm[(k, j)] * gamma(k) * beta(j);
            place(b.values_mut(), occupied.as_mut().map(|o| &mut o.b), t.b_index(k, j), v)?;
        }
    }
    Ok(())
}

/// Embed `A` (|S| x |T|) and `B` (|T| x |U|) as signals on the triplet's group.
/// Fails with [`Error::EmbeddingCollision`] if two entries land on one element.
pub fn embed_pair(
    am: &Matrix,
    bm: &Matrix,
    t: &IndexingTriplet,
    signs: Option<&Signs>,
) -> Result<(Signal, Signal)> {
    embed_pair_with(am, bm, t, signs, Placement::Strict)
}

pub fn embed_pair_with(
    am: &Matrix,
    bm: &Matrix,
    t: &IndexingTriplet,
    signs: Option<&Signs>,
    mode: Placement,
) -> Result<(Signal, Signal)> {
    let g = t.group().clone();
    let mut a = Signal::zeros(g.clone());
    let mut b = Signal::zeros(g.clone());
    match mode {
        Placement::Strict => {
            let mut occ = Occupancy::new(g.size());
            embed_into(&mut a, &mut b, Some(&mut occ), am, bm, t, signs)?;
        }
        Placement::Accumulate => embed_into(&mut a, &mut b, None, am, bm, t, signs)?,
    }
    Ok((a, b))
}

/// Read `C[i][j] = α_i β_j · c(-S(i) + U(j))` from real coefficients.
pub fn decode_real(c: &[f64], t: &IndexingTriplet, signs: Option<&Signs>) -> Result<Matrix> {
    if c.len() != t.group().size() {
        return Err(Error::DimensionMismatch { expected: t.group().size(), got: c.len() });
    }
    if let Some(s) = signs {
        s.check(t)?;
    }
    let (ns, _, nu) = t.dims();
    Ok(Matrix::from_fn(ns, nu, |i, j| {
        let sign = signs.map_or(1.0, |s| s.alpha[i] * s.beta[j]);
        sign * c[t.c_index(i, j)]
    }))
}

/// Decode a convolution output, first checking that its imaginary residue is
/// negligible.
pub fn decode(c: &Signal, t: &IndexingTriplet, signs: Option<&Signs>) -> Result<Matrix> {
    if c.group() != t.group() {
        return Err(Error::GroupMismatch);
    }
    let re = real_parts(c.values(), REAL_RESIDUE_TOL)?;
    decode_real(&re, t, signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian_fft::convolve;
    use crate::constructions::vanilla_tpp;

    fn naive(a: &Matrix, b: &Matrix) -> Matrix {
        Matrix::from_fn(a.nrows(), b.ncols(), |i, j| (0..a.ncols()).map(|k| a[(i, k)] * b[(k, j)]).sum())
    }

    #[test]
    fn scalar_embedding() {
        let t = vanilla_tpp(1, 1, 1).unwrap();
        let (a, b) = embed_pair(&Matrix::from_element(1, 1, 3.0), &Matrix::from_element(1, 1, 5.0), &t, None).unwrap();
        assert_eq!(a.values()[0].re, 3.0);
        assert_eq!(b.values()[0].re, 5.0);
    }

    #[test]
    fn identity_placement_mod_8() {
        let t = vanilla_tpp(2, 2, 2).unwrap();
        let id = Matrix::identity(2, 2);
        let (a, _) = embed_pair(&id, &id, &t, None).unwrap();
        assert_eq!(a.support(), vec![0, 6]);
        let c = convolve(&a, &embed_pair(&id, &id, &t, None).unwrap().1).unwrap();
        let out = decode(&c, &t, None).unwrap();
        assert!((out - id).abs().max() < 1e-12);
    }

    #[test]
    fn unit_signs_change_nothing() {
        let t = vanilla_tpp(2, 3, 2).unwrap();
        let a = Matrix::from_fn(2, 3, |i, k| (i * 3 + k) as f64 + 1.0);
        let b = Matrix::from_fn(3, 2, |k, j| (k * 2 + j) as f64 - 2.0);
        let ones = Signs::ones(2, 3, 2);
        assert_eq!(embed_pair(&a, &b, &t, None).unwrap(), embed_pair(&a, &b, &t, Some(&ones)).unwrap());
        let (ea, eb) = embed_pair(&a, &b, &t, None).unwrap();
        let c = convolve(&ea, &eb).unwrap();
        assert_eq!(decode(&c, &t, None).unwrap(), decode(&c, &t, Some(&ones)).unwrap());
    }

    #[test]
    fn rectangular_product_is_exact() {
        let t = vanilla_tpp(3, 3, 3).unwrap();
        let a = Matrix::from_fn(3, 3, |i, k| ((i * 7 + k * 3) % 5) as f64 - 2.0);
        let b = Matrix::from_fn(3, 3, |k, j| ((k * 2 + j * 5) % 7) as f64 - 3.0);
        let (ea, eb) = embed_pair(&a, &b, &t, None).unwrap();
        let out = decode(&convolve(&ea, &eb).unwrap(), &t, None).unwrap();
        assert!((out - naive(&a, &b)).abs().max() < 1e-10);
    }

    #[test]
    fn signed_decode_undoes_signs() {
        let t = vanilla_tpp(2, 2, 2).unwrap();
        let a = Matrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b = Matrix::from_row_slice(2, 2, &[5.0, 6.0, 7.0, 8.0]);
        let s = Signs { alpha: vec![-1.0, 1.0], beta: vec![1.0, -1.0], gamma: vec![-1.0, -1.0] };
        let (ea, eb) = embed_pair(&a, &b, &t, Some(&s)).unwrap();
        let out = decode(&convolve(&ea, &eb).unwrap(), &t, Some(&s)).unwrap();
        assert!((out - naive(&a, &b)).abs().max() < 1e-12);
    }

    #[test]
    fn collisions_are_reported_or_summed() {
        let t = crate::constructions::ap_triplet(2, 1).unwrap();
        let a = Matrix::from_element(2, 2, 1.0);
        assert!(matches!(embed_pair(&a, &a, &t, None), Err(Error::EmbeddingCollision(_))));
        let (ea, _) = embed_pair_with(&a, &a, &t, None, Placement::Accumulate).unwrap();
        assert_eq!(ea.values().iter().map(|v| v.re).sum::<f64>(), 4.0);
    }

    #[test]
    fn shape_mismatch() {
        let t = vanilla_tpp(2, 2, 2).unwrap();
        assert!(embed_pair(&Matrix::zeros(3, 2), &Matrix::zeros(2, 2), &t, None).is_err());
    }
}
