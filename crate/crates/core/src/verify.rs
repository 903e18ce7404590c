//! A fast self-check over every module, run by `convmm verify all`.
//!
//! Each check uses small instances and fixed seeds and reports a one-line
//! detail. None of them is statistical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;

use crate::abelian_fft::{
    convolve, convolve_direct, dft_direct, fft, ifft, partial_fft_direct, partial_ifft_direct, AbelianGroup,
    RestrictedSpectrum, Signal,
};
use crate::analysis::{
    ap_atpq_closed_form, atpq_count, atpq_count_naive, indicator_spectrum, lower_bound_check, s_delta, t_delta,
};
use crate::approx_mm::{
    polyform, sketch_and_solve_with, slab_partial_fft, slab_partial_ifft, stpp_truncated_square, tpp_truncated,
    EmbeddedSide, TruncationPlan,
};
use crate::bench::{read_csv, run_experiment, to_csv_string, Algorithm, ExperimentConfig};
use crate::constructions::{ap_triplet, cksu_stpp, embed_stpp_pair, vanilla_tpp, verify_stpp, verify_tpp, SupportSets};
use crate::exact_mm::{blocked_multiply, exponent_calculator, threshold_calculator, Execution, StppMultiplier};
use crate::matrix::{rademacher, Matrix};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> std::result::Result<String, String>;

const CHECKS: &[(&str, Check)] = &[
    ("fft_matches_direct_dft", fft_matches_direct),
    ("convolution_theorem", convolution_theorem),
    ("vanilla_tpp", vanilla_tpp_check),
    ("cksu_stpp", cksu_stpp_check),
    ("blocked_multiply_exact", blocked_exact),
    ("runtime_calculators", calculators),
    ("atpq_identities", atpq_identities),
    ("spectral_closed_forms", spectral_closed_forms),
    ("slab_transform_oracles", slab_oracles),
    ("exact_at_full_budget", full_budget),
    ("truncation_contraction", contraction),
    ("bench_determinism", bench_determinism),
];

/// Names of all checks in execution order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Run every check; a panic inside a check counts as a failure.
pub fn verify_all() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = match std::panic::catch_unwind(f) {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(_) => (false, "panicked".to_string()),
            };
            CheckOutcome { name, passed, detail }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_signal(g: &AbelianGroup, rng: &mut ChaCha8Rng) -> Signal {
    let v = (0..g.size()).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    Signal::new(g.clone(), v).expect("length matches")
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn groups() -> Vec<AbelianGroup> {
    [vec![6], vec![2, 3, 4], vec![5, 5], vec![7, 1, 3], vec![4, 4, 4]]
        .into_iter()
        .map(|m| AbelianGroup::new(m).expect("valid group"))
        .collect()
}

fn fft_matches_direct() -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for g in groups() {
        let s = random_signal(&g, &mut rng);
        let f = fft(&s);
        worst = worst.max(max_dev(f.values(), dft_direct(&s).values()));
        worst = worst.max(max_dev(ifft(&f).values(), s.values()));
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e} over {} groups", groups().len()))
}

fn convolution_theorem() -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for g in groups() {
        let (a, b) = (random_signal(&g, &mut rng), random_signal(&g, &mut rng));
        let fast = convolve(&a, &b).map_err(|e| e.to_string())?;
        let slow = convolve_direct(&a, &b).map_err(|e| e.to_string())?;
        worst = worst.max(max_dev(fast.values(), slow.values()));
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn vanilla_tpp_check() -> std::result::Result<String, String> {
    let mut count = 0;
    for n in 1..=3 {
        for m in 1..=3 {
            for p in 1..=3 {
                let t = vanilla_tpp(n, m, p).map_err(|e| e.to_string())?;
                ensure(verify_tpp(&t).map_err(|e| e.to_string())?, || format!("<{n},{m},{p}> fails TPP"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} vanilla triplets satisfy TPP"))
}

fn cksu_stpp_check() -> std::result::Result<String, String> {
    for (m, nf) in [(3, 1), (4, 1), (5, 1), (3, 2)] {
        let f = cksu_stpp(m, nf).map_err(|e| e.to_string())?;
        ensure(verify_stpp(&f).map_err(|e| e.to_string())?, || format!("m={m}, N={nf} fails STPP"))?;
    }
    Ok("m in {3,4,5} with N=1 and m=3 with N=2".into())
}

fn blocked_exact() -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for (m, nf) in [(3, 1), (3, 2), (4, 1), (5, 1)] {
        let n0 = (m - 1usize).pow(nf as u32) << nf;
        let a = Matrix::from_fn(n0, n0, |_, _| rng.random_range(-1.0..1.0));
        let b = Matrix::from_fn(n0, n0, |_, _| rng.random_range(-1.0..1.0));
        let exact = &a * &b;
        let c = blocked_multiply(m, nf, &a, &b).map_err(|e| e.to_string())?;
        worst = worst.max((c - &exact).norm() / exact.norm());
    }
    ensure(worst <= 1e-8, || format!("relative error {worst:e}"))?;
    Ok(format!("worst relative error {worst:.1e}"))
}

fn calculators() -> std::result::Result<String, String> {
    let e8 = exponent_calculator(8).map_err(|e| e.to_string())?.exponent;
    ensure((2.885..=2.895).contains(&e8), || format!("exponent(8) = {e8}"))?;
    let best = (3..=100)
        .map(|m| (m, exponent_calculator(m).expect("m >= 3").exponent))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty");
    ensure((19..=21).contains(&best.0), || format!("minimum at m={}", best.0))?;
    let t = threshold_calculator(8, 5.0).map_err(|e| e.to_string())?;
    ensure(t.n_factors >= 1, || "threshold below 1".into())?;
    Ok(format!("exponent(8) = {e8:.4}, minimum {:.4} at m={}, threshold(8, 5) = {}", best.1, best.0, t.n_factors))
}

fn atpq_identities() -> std::result::Result<String, String> {
    let mut cases = 0;
    for n in 1..=8usize {
        for r in 1..=n {
            let t = ap_triplet(n, r).map_err(|e| e.to_string())?;
            let rep = atpq_count(&t).map_err(|e| e.to_string())?;
            let n3 = (n * n * n) as u64;
            ensure(rep.rho == ap_atpq_closed_form(n, r), || format!("n={n} r={r}: rho {}", rep.rho))?;
            ensure(rep.rho >= n3, || format!("n={n} r={r}: rho below n^3"))?;
            ensure(rep.buckets.iter().sum::<u64>() == rep.rho, || "bucket sum".into())?;
            let tpp = verify_tpp(&t).map_err(|e| e.to_string())?;
            ensure((rep.rho == n3) == tpp, || format!("n={n} r={r}: TPP disagrees with rho"))?;
            let lb = lower_bound_check(&t).map_err(|e| e.to_string())?;
            ensure(n % r != 0 || lb.slack == 0, || format!("n={n} r={r}: slack {}", lb.slack))?;
            if n <= 5 {
                ensure(atpq_count_naive(&t).map_err(|e| e.to_string())? == rep.rho, || "naive count".into())?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} arithmetic-progression triplets"))
}

fn spectral_closed_forms() -> std::result::Result<String, String> {
    let mut worst: f64 = 0.0;
    for m in 2..=6 {
        let g = AbelianGroup::power(m, 3).map_err(|e| e.to_string())?;
        let sup = SupportSets::new(m).map_err(|e| e.to_string())?;
        let mut spectra = Vec::new();
        for i in 1..=3u8 {
            let mut v = vec![0.0; g.size()];
            for p in sup.members(i) {
                v[p] = 1.0;
            }
            spectra.push(dft_direct(&Signal::from_real(g.clone(), &v).map_err(|e| e.to_string())?));
        }
        let scale = (m as f64).powf(1.5);
        for x in 0..g.size() {
            let xi = [x / (m * m), (x / m) % m, x % m];
            for i in 1..=3 {
                let want = indicator_spectrum(m, i, xi).map_err(|e| e.to_string())?;
                worst = worst.max((spectra[i - 1].values()[x] - want).norm());
            }
            let t = (spectra[0].values()[x] + spectra[2].values()[x]).conj() * scale;
            worst = worst.max((t - t_delta(m, xi).map_err(|e| e.to_string())? as f64).norm());
            for r in 0..=m {
                let count = (0..g.size())
                    .filter(|&y| (0..3).all(|a| (y / m.pow(2 - a as u32)) % m >= r && ((y / m.pow(2 - a as u32)) % m + xi[a]) % m >= r))
                    .count() as u64;
                ensure(s_delta(m, r, xi).map_err(|e| e.to_string())? == count, || format!("S(δ) at m={m}, r={r}"))?;
            }
        }
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("m <= 6, max deviation {worst:.1e}"))
}

fn slab_oracles() -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for m in [3, 5, 6] {
        let q = m - 1;
        let mut mk = || Matrix::from_fn(q, q, |_, _| rng.random_range(-1.0..1.0));
        let (a, b) = embed_stpp_pair(&mk(), &mk(), &mk(), &mk()).map_err(|e| e.to_string())?;
        for r in 0..=m {
            let plan = TruncationPlan::new(m, r).map_err(|e| e.to_string())?;
            for (s, side) in [(&a, EmbeddedSide::A), (&b, EmbeddedSide::B)] {
                let fast = slab_partial_fft(s, &plan, side).map_err(|e| e.to_string())?;
                let slow = partial_fft_direct(s, plan.set()).map_err(|e| e.to_string())?;
                worst = worst.max(max_dev(fast.values(), slow.values()));
                let pts = plan.output_region();
                let back = slab_partial_ifft(&fast, &plan, &pts).map_err(|e| e.to_string())?;
                let direct = partial_ifft_direct(&fast, &pts).map_err(|e| e.to_string())?;
                worst = worst.max(max_dev(&back, &direct));
            }
        }
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("m in {{3,5,6}}, all r, max deviation {worst:.1e}"))
}

fn full_budget() -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 12;
    let (a, b) = (rademacher(n, &mut rng), rademacher(n, &mut rng));
    let exact = &a * &b;
    let rel = |c: Matrix| (c - &exact).norm() / exact.norm();
    let mult = StppMultiplier::new(3, 1).map_err(|e| e.to_string())?;
    let results = [
        ("polyform", rel(polyform(&a, &b, n, 1).map_err(|e| e.to_string())?)),
        ("stpp_fourier", rel(stpp_truncated_square(&a, &b, n / 2 + 1).map_err(|e| e.to_string())?)),
        ("tpp_fourier", rel(tpp_truncated(&a, &b, n).map_err(|e| e.to_string())?)),
        (
            "sketch_and_solve",
            rel(sketch_and_solve_with(&a, &b, &Matrix::identity(n, n), &mult, Execution::Sequential)
                .map_err(|e| e.to_string())?),
        ),
    ];
    for (name, e) in results {
        ensure(e <= 1e-8, || format!("{name}: relative error {e:e}"))?;
    }
    Ok("polyform, stpp_fourier, tpp_fourier, sketch_and_solve".into())
}

fn contraction() -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let m = 7;
    let q = m - 1;
    let mut mk = || Matrix::from_fn(q, q, |_, _| if rng.random::<bool>() { 1.0 } else { -1.0 });
    let (a, b) = embed_stpp_pair(&mk(), &mk(), &mk(), &mk()).map_err(|e| e.to_string())?;
    let c = convolve(&a, &b).map_err(|e| e.to_string())?;
    let spec = fft(&c);
    let mut prev = f64::INFINITY;
    for r in 0..=m {
        let plan = TruncationPlan::new(m, r).map_err(|e| e.to_string())?;
        let kept = RestrictedSpectrum::restrict(&spec, plan.set()).map_err(|e| e.to_string())?;
        let outside = (spec.values().iter().map(|v| v.norm_sqr()).sum::<f64>() - kept.norm_l2().powi(2)).max(0.0).sqrt();
        ensure(outside <= prev + 1e-9, || format!("discarded mass grew at r={r}"))?;
        prev = outside;
    }
    ensure(prev < 1e-9, || "r = m leaves mass outside K".into())?;
    Ok(format!("m={m}, r = 0..={m}"))
}

fn bench_determinism() -> std::result::Result<String, String> {
    let mut c = ExperimentConfig::new(Algorithm::Polyform, 10);
    c.trials = 2;
    c.record_wall_time = false;
    c.rank_diagnostics = false;
    let one = to_csv_string(&run_experiment(&c).map_err(|e| e.to_string())?.records).map_err(|e| e.to_string())?;
    let two = to_csv_string(&run_experiment(&c).map_err(|e| e.to_string())?.records).map_err(|e| e.to_string())?;
    ensure(one == two, || "two runs differ".into())?;
    let back = read_csv(one.as_bytes()).map_err(|e| e.to_string())?;
    ensure(to_csv_string(&back).map_err(|e| e.to_string())? == one, || "CSV round trip differs".into())?;
    Ok(format!("{} records reproduced byte for byte", back.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        let out = verify_all();
        assert_eq!(out.len(), check_names().len());
        for o in out {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }
}
