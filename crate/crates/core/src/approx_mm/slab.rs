//! Fourier truncation of the single-factor STPP embedding over `Z_m^3`.
//!
//! The embedded signals live on the coordinate planes `X1 = {(x,y,0)}`,
//! `X2 = {(0,y,z)}` and `X3 = {(x,0,z)}`, so each plane's part of the spectrum
//! is a 2-D transform that is constant along the missing axis. Only the
//! frequencies of the slab union `K = {ξ : some ξ_i < r}` are kept.

use rustfft::num_complex::Complex64;

use crate::abelian_fft::{omega_table, transform_axes, AbelianGroup, FrequencySet, RestrictedSpectrum, Signal};
use crate::constructions::{cksu_stpp, IndexingTriplet, SupportSets};
use crate::matrix::{padded, require_shape, require_square, Matrix};
use crate::{Error, Result};

/// Retained frequencies `K_1 ∪ K_2 ∪ K_3` of width `r` in `Z_m^3`, and the
/// output region `X1 ∪ X3`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationPlan {
    m: usize,
    r: usize,
    set: FrequencySet,
    supports: SupportSets,
    plane: AbelianGroup,
}

impl TruncationPlan {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("truncation needs m >= 2, got {m}")));
        }
        if r > m {
            return Err(Error::InvalidParameter(format!("slab width r={r} exceeds m={m}")));
        }
        let set = FrequencySet::slabs(AbelianGroup::power(m, 3)?, r)?;
        Ok(TruncationPlan { m, r, set, supports: SupportSets::new(m)?, plane: AbelianGroup::power(m, 2)? })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn set(&self) -> &FrequencySet {
        &self.set
    }

    pub fn group(&self) -> &AbelianGroup {
        self.set.group()
    }

    /// `|K| = m^3 - (m-r)^3`.
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn supports(&self) -> &SupportSets {
        &self.supports
    }

    /// `X1 ∪ X3` in ascending flat order.
    pub fn output_region(&self) -> Vec<usize> {
        self.supports.output_region()
    }
}

/// Which embedded signal is being transformed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddedSide {
    /// Supported on `X1 ∪ X2`.
    A,
    /// Supported on `X2 ∪ X3`.
    B,
}

impl EmbeddedSide {
    fn regions(self) -> [u8; 2] {
        match self {
            EmbeddedSide::A => [1, 2],
            EmbeddedSide::B => [2, 3],
        }
    }
}

/// `â` on `K` from one `m x m` transform per occupied plane plus `O(|K|)`
/// assembly.
pub fn slab_partial_fft(signal: &Signal, plan: &TruncationPlan, side: EmbeddedSide) -> Result<RestrictedSpectrum> {
    if signal.group() != plan.group() {
        return Err(Error::GroupMismatch);
    }
    if let Some(g) = plan.supports.violation(signal.values(), side.regions()) {
        return Err(Error::SupportViolation(g));
    }
    let m = plan.m;
    let v = signal.values();
    let zero = Complex64::new(0.0, 0.0);
    // plane p holds the 2-D signal on its two free axes, row-major
    let extract = |f: &dyn Fn(usize, usize) -> usize| -> Option<Vec<Complex64>> {
        let buf: Vec<Complex64> = (0..m * m).map(|i| v[f(i / m, i % m)]).collect();
        if buf.iter().all(|c| *c == zero) {
            return None;
        }
        let mut buf = buf;
        transform_axes(&plan.plane, &mut buf, true);
        Some(buf)
    };
    let p1 = extract(&|x, y| (x * m + y) * m); // (x, y, 0) -> (ξ1, ξ2)
    let p2 = extract(&|y, z| y * m + z); // (0, y, z) -> (ξ2, ξ3)
    let p3 = extract(&|x, z| x * m * m + z); // (x, 0, z) -> (ξ1, ξ3)
    let norm = 1.0 / (m as f64).powf(1.5);
    let values = plan
        .set
        .members()
        .map(|xi| {
            let (a, b, c) = (xi / (m * m), (xi / m) % m, xi % m);
            let mut acc = zero;
            if let Some(p) = &p1 {
                acc += p[a * m + b];
            }
            if let Some(p) = &p2 {
                acc += p[b * m + c];
            }
            if let Some(p) = &p3 {
                acc += p[a * m + c];
            }
            acc * norm
        })
        .collect();
    RestrictedSpectrum::new(plan.set.clone(), values)
}

/// Inverse transform of a spectrum on `K`, evaluated at the flat points.
///
/// When every point has a zero coordinate (the output region `X1 ∪ X3` and
/// the axes), the phase along that coordinate is 1, so `K` is summed along it
/// and one `m x m` inverse per coordinate plane finishes the job:
/// `O(|K| + m^2 log m)`.
///
/// Other points go through slices: `K` is split into the disjoint pieces
/// `{ξ1 < r}`, `{ξ1 >= r, ξ2 < r}` and `{ξ1, ξ2 >= r, ξ3 < r}`, each `r`
/// slices perpendicular to one axis; every slice costs one `m x m` inverse and
/// `O(1)` work per point, `O(r m^2 log m + r |points|)` in total.
pub fn slab_partial_ifft(spectrum: &RestrictedSpectrum, plan: &TruncationPlan, points: &[usize]) -> Result<Vec<Complex64>> {
    if spectrum.group() != plan.group() {
        return Err(Error::GroupMismatch);
    }
    let zero = Complex64::new(0.0, 0.0);
    let (m, r) = (plan.m, plan.r);
    let owned;
    let spec = if spectrum.set() == &plan.set {
        spectrum
    } else if spectrum.set().is_subset_of(&plan.set) {
        owned = RestrictedSpectrum::restrict(&spectrum.to_dense(), &plan.set)?;
        &owned
    } else {
        return Err(Error::SpectrumOutsideSupport);
    };
    if let Some(&p) = points.iter().find(|&&p| p >= m * m * m) {
        return Err(Error::InvalidParameter(format!("point {p} outside Z_{m}^3")));
    }
    let coords: Vec<[usize; 3]> = points.iter().map(|&p| [p / (m * m), (p / m) % m, p % m]).collect();
    if coords.iter().all(|x| x.contains(&0)) {
        return Ok(planar_inverse(spec, plan, &coords));
    }
    let winv: Vec<Complex64> = omega_table(m).into_iter().map(|w| w.conj()).collect();
    let vals = spec.values();
    let at = |xi: usize| vals[plan.set.position(xi).expect("member of K")];
    let mut out = vec![zero; points.len()];
    let mut buf = vec![zero; m * m];

    // slices ξ1 = a, all of (ξ2, ξ3)
    for a in 0..r {
        let start = plan.set.position(a * m * m).expect("slab member");
        buf.copy_from_slice(&vals[start..start + m * m]);
        transform_axes(&plan.plane, &mut buf, false);
        for (o, x) in out.iter_mut().zip(&coords) {
            *o += winv[(x[0] * a) % m] * buf[x[1] * m + x[2]];
        }
    }
    // slices ξ2 = b with ξ1 >= r, over (ξ1, ξ3)
    for b in 0..r {
        for (i, slot) in buf.iter_mut().enumerate() {
            let (x1, x3) = (i / m, i % m);
            *slot = if x1 >= r { at((x1 * m + b) * m + x3) } else { zero };
        }
        transform_axes(&plan.plane, &mut buf, false);
        for (o, x) in out.iter_mut().zip(&coords) {
            *o += winv[(x[1] * b) % m] * buf[x[0] * m + x[2]];
        }
    }
    // slices ξ3 = c with ξ1, ξ2 >= r, over (ξ1, ξ2)
    for c in 0..r {
        for (i, slot) in buf.iter_mut().enumerate() {
            let (x1, x2) = (i / m, i % m);
            *slot = if x1 >= r && x2 >= r { at((x1 * m + x2) * m + c) } else { zero };
        }
        transform_axes(&plan.plane, &mut buf, false);
        for (o, x) in out.iter_mut().zip(&coords) {
            *o += winv[(x[2] * c) % m] * buf[x[0] * m + x[1]];
        }
    }
    let norm = 1.0 / (m as f64).powf(1.5);
    for o in out.iter_mut() {
        *o *= norm;
    }
    Ok(out)
}

/// Inverse at points with a zero coordinate. Plane `p` collects
/// `Σ_{ξ_p} ĉ(ξ)` over the two remaining frequency axes.
fn planar_inverse(spec: &RestrictedSpectrum, plan: &TruncationPlan, coords: &[[usize; 3]]) -> Vec<Complex64> {
    let m = plan.m;
    let zero = Complex64::new(0.0, 0.0);
    // a point on several planes is read from the first one
    let plane_of = |x: &[usize; 3]| if x[2] == 0 { 2 } else if x[0] == 0 { 0 } else { 1 };
    let mut used = [false; 3];
    for x in coords {
        used[plane_of(x)] = true;
    }
    let mut planes: [Vec<Complex64>; 3] = std::array::from_fn(|p| if used[p] { vec![zero; m * m] } else { Vec::new() });
    for (xi, &v) in plan.set.members().zip(spec.values()) {
        let (a, b, c) = (xi / (m * m), (xi / m) % m, xi % m);
        if used[0] {
            planes[0][b * m + c] += v;
        }
        if used[1] {
            planes[1][a * m + c] += v;
        }
        if used[2] {
            planes[2][a * m + b] += v;
        }
    }
    for (p, plane) in planes.iter_mut().enumerate() {
        if used[p] {
            transform_axes(&plan.plane, plane, false);
        }
    }
    let norm = 1.0 / (m as f64).powf(1.5);
    coords
        .iter()
        .map(|x| {
            let v = match plane_of(x) {
                0 => planes[0][x[1] * m + x[2]],
                1 => planes[1][x[0] * m + x[2]],
                _ => planes[2][x[0] * m + x[1]],
            };
            v * norm
        })
        .collect()
}

/// The pointwise product `sqrt|G| · â ⊙ b̂` on `K`.
pub fn restricted_product(a: &RestrictedSpectrum, b: &RestrictedSpectrum) -> Result<RestrictedSpectrum> {
    if a.set() != b.set() {
        return Err(Error::GroupMismatch);
    }
    let s = (a.group().size() as f64).sqrt();
    let values = a.values().iter().zip(b.values()).map(|(x, y)| x * y * s).collect();
    RestrictedSpectrum::new(a.set().clone(), values)
}

/// Approximate `(A1 B1, A2 B2)` for `(m-1) x (m-1)` inputs by keeping only the
/// slab frequencies of width `r` of the convolution. The output is the real
/// part of the truncated inverse on `X1 ∪ X3`.
pub fn stpp_truncated_pair(a1: &Matrix, a2: &Matrix, b1: &Matrix, b2: &Matrix, r: usize) -> Result<(Matrix, Matrix)> {
    let side = require_square(a1, "A1")?;
    for mat in [a2, b1, b2] {
        require_shape(mat, side, side)?;
    }
    if side == 0 {
        return Err(Error::InvalidParameter("truncated pair needs non-empty matrices".into()));
    }
    let plan = TruncationPlan::new(side + 1, r)?;
    stpp_truncated_pair_with(a1, a2, b1, b2, &plan)
}

/// The pair product with every stage fused: the three coordinate-plane
/// spectra of each signal come straight from the matrices, and `ĉ` is formed
/// on `K` and summed into the two output planes without materializing any
/// `m^3` or `|K|` array. Time `O(|K| + m^2 log m)`, memory `O(m^2)`. Agrees
/// with the composition of [`slab_partial_fft`], [`restricted_product`] and
/// [`slab_partial_ifft`].
pub fn stpp_truncated_pair_with(
    a1: &Matrix,
    a2: &Matrix,
    b1: &Matrix,
    b2: &Matrix,
    plan: &TruncationPlan,
) -> Result<(Matrix, Matrix)> {
    let (m, r) = (plan.m, plan.r);
    let q = m - 1;
    for mat in [a1, a2, b1, b2] {
        require_shape(mat, q, q)?;
    }
    let family = cksu_stpp(m, 1)?;
    let zero = Complex64::new(0.0, 0.0);
    // plane 0 holds X1 over (x, y), plane 1 X2 over (y, z), plane 2 X3 over (x, z)
    let scatter = |planes: &mut [Vec<Complex64>; 3], flat: usize, v: f64| {
        let (x, y, z) = (flat / (m * m), (flat / m) % m, flat % m);
        match plan.supports.region_of(flat) {
            Some(1) => planes[0][x * m + y] += v,
            Some(2) => planes[1][y * m + z] += v,
            Some(3) => planes[2][x * m + z] += v,
            _ => unreachable!("single-factor family places entries on X1, X2, X3"),
        }
    };
    let mut pa: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![zero; m * m]);
    let mut pb = pa.clone();
    for (t, (am, bm)) in family.triplets().iter().zip([(a1, b1), (a2, b2)]) {
        for i in 0..q {
            for k in 0..q {
                scatter(&mut pa, t.a_index(i, k), am[(i, k)]);
                scatter(&mut pb, t.b_index(i, k), bm[(i, k)]);
            }
        }
    }
    for p in pa.iter_mut().chain(pb.iter_mut()) {
        transform_axes(&plan.plane, p, true);
    }
    // output on z = 0 over (ξ1, ξ2) and on y = 0 over (ξ1, ξ3)
    let mut out_z = vec![zero; m * m];
    let mut out_y = vec![zero; m * m];
    for a in 0..m {
        for b in 0..m {
            let c_end = if a < r || b < r { m } else { r };
            let (a_ab, b_ab) = (pa[0][a * m + b], pb[0][a * m + b]);
            let mut along_c = zero;
            for c in 0..c_end {
                let ah = a_ab + pa[1][b * m + c] + pa[2][a * m + c];
                let bh = b_ab + pb[1][b * m + c] + pb[2][a * m + c];
                let v = ah * bh;
                along_c += v;
                out_y[a * m + c] += v;
            }
            out_z[a * m + b] += along_c;
        }
    }
    transform_axes(&plan.plane, &mut out_z, false);
    transform_axes(&plan.plane, &mut out_y, false);
    let norm = 1.0 / (m as f64).powi(3);
    let read = |t: &IndexingTriplet| {
        Matrix::from_fn(q, q, |i, j| {
            let g = t.c_index(i, j);
            let (x, y, z) = (g / (m * m), (g / m) % m, g % m);
            let v = if z == 0 { out_z[x * m + y] } else { out_y[x * m + z] };
            v.re * norm
        })
    };
    Ok((read(family.triplet(0)), read(family.triplet(1))))
}

/// Side after padding odd `n` by one row and column.
pub fn truncation_effective_side(n: usize) -> usize {
    n + n % 2
}

/// `n x n` approximate product from four truncated pairs on `Z_m^3` with
/// `m = n/2 + 1`: `C_ij = A_i1 B_1j + A_i2 B_2j`. Odd `n` is zero-padded.
pub fn stpp_truncated_square(a: &Matrix, b: &Matrix, r: usize) -> Result<Matrix> {
    let n = require_square(a, "A")?;
    require_shape(b, n, n)?;
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let ne = truncation_effective_side(n);
    let d = ne / 2;
    let plan = TruncationPlan::new(d + 1, r)?;
    let (pa, pb) = (padded(a, ne, ne), padded(b, ne, ne));
    let blk = |mat: &Matrix, i: usize, j: usize| mat.view((i * d, j * d), (d, d)).into_owned();
    let mut c = Matrix::zeros(ne, ne);
    for i in 0..2 {
        for j in 0..2 {
            let (c1, c2) = stpp_truncated_pair_with(&blk(&pa, i, 0), &blk(&pa, i, 1), &blk(&pb, 0, j), &blk(&pb, 1, j), &plan)?;
            c.view_mut((i * d, j * d), (d, d)).copy_from(&(c1 + c2));
        }
    }
    Ok(padded(&c, n, n))
}
