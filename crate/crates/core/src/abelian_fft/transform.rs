//! Unitary multidimensional DFT over `Z_{m1} x ... x Z_{md}`.
//!
//! Forward: `f̂(ξ) = |G|^{-1/2} Σ_g f(g) ω^{<g,ξ>}` with `ω_m = exp(-2πi/m)` per
//! axis. Inverse uses the conjugate character. Each axis is transformed with a
//! 1-D FFT of the axis length; non-power-of-two lengths are handled by the
//! planner (mixed radix, Rader or Bluestein as appropriate).

use std::cell::Cell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use super::{AbelianGroup, Signal, Spectrum};
use crate::{Error, Result};

type PlanKey = (usize, bool);

fn plan_cache() -> &'static RwLock<HashMap<PlanKey, Arc<dyn Fft<f64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<PlanKey, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared 1-D plan for `len`; plans are immutable once inserted.
pub(crate) fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    let key = (len, forward);
    if let Some(p) = plan_cache().read().expect("plan cache poisoned").get(&key) {
        return Arc::clone(p);
    }
    let mut cache = plan_cache().write().expect("plan cache poisoned");
    Arc::clone(cache.entry(key).or_insert_with(|| {
        let dir = if forward { FftDirection::Forward } else { FftDirection::Inverse };
        FftPlanner::new().plan_fft(len, dir)
    }))
}

/// `table[k] = ω_m^k = exp(-2πi k / m)`, the forward character of `Z_m`.
/// Every module that evaluates characters goes through this table.
pub fn omega_table(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| {
            let theta = -2.0 * PI * (k as f64) / (m as f64);
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect()
}

thread_local! {
    static WORK: Cell<f64> = const { Cell::new(0.0) };
}

/// Butterfly-equivalent work (`L log2 L` per 1-D line transform of length
/// `L`) performed by multidimensional transforms on the current thread.
pub mod work_counter {
    use super::WORK;

    pub fn reset() {
        WORK.with(|w| w.set(0.0));
    }

    pub fn read() -> f64 {
        WORK.with(|w| w.get())
    }

    pub(super) fn add(x: f64) {
        WORK.with(|w| w.set(w.get() + x));
    }
}

/// Unnormalized in-place transform along every axis.
pub(crate) fn transform_axes(group: &AbelianGroup, data: &mut [Complex64], forward: bool) {
    let size = group.size();
    debug_assert_eq!(data.len(), size);
    let mut buf: Vec<Complex64> = Vec::new();
    let mut scratch: Vec<Complex64> = Vec::new();
    for (axis, &len) in group.moduli().iter().enumerate() {
        if len == 1 {
            continue;
        }
        let fft = plan(len, forward);
        let need = fft.get_inplace_scratch_len();
        if scratch.len() < need {
            scratch.resize(need, Complex64::default());
        }
        let stride = group.strides()[axis];
        if stride == 1 {
            fft.process_with_scratch(data, &mut scratch[..need]);
        } else {
            let block = len * stride;
            buf.resize(block, Complex64::default());
            for chunk in data.chunks_exact_mut(block) {
                for j in 0..len {
                    let row = &chunk[j * stride..(j + 1) * stride];
                    for (t, v) in row.iter().enumerate() {
                        buf[t * len + j] = *v;
                    }
                }
                fft.process_with_scratch(&mut buf, &mut scratch[..need]);
                for j in 0..len {
                    let row = &mut chunk[j * stride..(j + 1) * stride];
                    for (t, v) in row.iter_mut().enumerate() {
                        *v = buf[t * len + j];
                    }
                }
            }
        }
        let lines = (size / len) as f64;
        work_counter::add(lines * (len as f64) * (len as f64).log2());
    }
}

/// Unitary forward transform of raw values laid out over `group`.
pub fn fft_in_place(group: &AbelianGroup, data: &mut [Complex64]) -> Result<()> {
    if data.len() != group.size() {
        return Err(Error::DimensionMismatch { expected: group.size(), got: data.len() });
    }
    transform_axes(group, data, true);
    scale(data, 1.0 / (group.size() as f64).sqrt());
    Ok(())
}

/// Unitary inverse transform of raw values laid out over `group`.
pub fn ifft_in_place(group: &AbelianGroup, data: &mut [Complex64]) -> Result<()> {
    if data.len() != group.size() {
        return Err(Error::DimensionMismatch { expected: group.size(), got: data.len() });
    }
    transform_axes(group, data, false);
    scale(data, 1.0 / (group.size() as f64).sqrt());
    Ok(())
}

fn scale(data: &mut [Complex64], s: f64) {
    for v in data.iter_mut() {
        *v *= s;
    }
}

pub fn fft(signal: &Signal) -> Spectrum {
    let group = signal.group().clone();
    let mut values = signal.values().to_vec();
    transform_axes(&group, &mut values, true);
    scale(&mut values, 1.0 / (group.size() as f64).sqrt());
    Spectrum::new(group, values).expect("length preserved")
}

pub fn ifft(spectrum: &Spectrum) -> Signal {
    let group = spectrum.group().clone();
    let mut values = spectrum.values().to_vec();
    transform_axes(&group, &mut values, false);
    scale(&mut values, 1.0 / (group.size() as f64).sqrt());
    Signal::new(group, values).expect("length preserved")
}

/// Group-algebra product `a * b` through the convolution theorem,
/// `(a*b)^ = sqrt|G| · â ⊙ b̂`.
pub fn convolve(a: &Signal, b: &Signal) -> Result<Signal> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    let group = a.group().clone();
    let mut fa = a.values().to_vec();
    let mut fb = b.values().to_vec();
    transform_axes(&group, &mut fa, true);
    transform_axes(&group, &mut fb, true);
    // Unnormalized transforms: the unitary factors and sqrt|G| collapse to 1/|G|.
    let s = 1.0 / group.size() as f64;
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y * s;
    }
    transform_axes(&group, &mut fa, false);
    Signal::new(group, fa)
}
