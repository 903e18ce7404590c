use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;

use convmm::abelian_fft::{convolve, convolve_direct, dft_direct, fft, ifft, AbelianGroup, Signal};
use convmm::analysis::{atpq_count, atpq_count_naive, lower_bound_check, DistributionKind};
use convmm::approx_mm::{polyform, slab_partial_fft, stpp_truncated_square, EmbeddedSide, TruncationPlan};
use convmm::bench::{
    read_csv, read_json, run_experiment, to_csv_string, to_json_string, Algorithm, ExperimentConfig, RSchedule,
};
use convmm::constructions::{ap_triplet, decode, embed_pair, embed_stpp_pair, vanilla_tpp};
use convmm::exact_mm::blocked_multiply;
use convmm::Matrix;

fn moduli() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..6, 1..4)
}

fn signal(g: &AbelianGroup, seed: u64) -> Signal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..g.size()).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    Signal::new(g.clone(), v).unwrap()
}

fn matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fft_round_trip_and_parseval(ms in moduli(), seed in any::<u64>()) {
        let g = AbelianGroup::new(ms).unwrap();
        let x = signal(&g, seed);
        let xh = fft(&x);
        prop_assert!(max_dev(ifft(&xh).values(), x.values()) < 1e-12);
        prop_assert!((xh.norm_l2() - x.norm_l2()).abs() < 1e-12 * (1.0 + x.norm_l2()));
        prop_assert!(max_dev(xh.values(), dft_direct(&x).values()) < 1e-11);
    }

    #[test]
    fn fft_is_linear(ms in moduli(), s1 in any::<u64>(), s2 in any::<u64>(), c in -3.0f64..3.0) {
        let g = AbelianGroup::new(ms).unwrap();
        let (x, y) = (signal(&g, s1), signal(&g, s2));
        let z: Vec<Complex64> = x.values().iter().zip(y.values()).map(|(a, b)| a * c + b).collect();
        let lhs = fft(&Signal::new(g.clone(), z).unwrap());
        let (xh, yh) = (fft(&x), fft(&y));
        let rhs: Vec<Complex64> = xh.values().iter().zip(yh.values()).map(|(a, b)| a * c + b).collect();
        prop_assert!(max_dev(lhs.values(), &rhs) < 1e-11);
    }

    #[test]
    fn convolution_theorem(ms in moduli(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let g = AbelianGroup::new(ms).unwrap();
        let (x, y) = (signal(&g, s1), signal(&g, s2));
        let fast = convolve(&x, &y).unwrap();
        prop_assert!(max_dev(fast.values(), convolve_direct(&x, &y).unwrap().values()) < 1e-10);
        let scale = (g.size() as f64).sqrt();
        let prod: Vec<Complex64> = fft(&x).values().iter().zip(fft(&y).values()).map(|(a, b)| a * b * scale).collect();
        prop_assert!(max_dev(fft(&fast).values(), &prod) < 1e-10);
    }

    #[test]
    fn tpp_embed_decode_is_exact(n in 1usize..5, m in 1usize..5, p in 1usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (matrix(n, m, &mut rng), matrix(m, p, &mut rng));
        let t = vanilla_tpp(n, m, p).unwrap();
        let (ea, eb) = embed_pair(&a, &b, &t, None).unwrap();
        let c = decode(&convolve(&ea, &eb).unwrap(), &t, None).unwrap();
        prop_assert!((c - &a * &b).norm() < 1e-10);
    }

    #[test]
    fn blocked_multiply_is_exact(m in 3usize..6, nf in 1usize..3, frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let n0 = (2 * (m - 1)).pow(nf as u32);
        let side = 1 + ((n0 - 1) as f64 * frac) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (matrix(side, side, &mut rng), matrix(side, side, &mut rng));
        let c = blocked_multiply(m, nf, &a, &b).unwrap();
        prop_assert!((c - &a * &b).norm() <= 1e-10 * (1.0 + (&a * &b).norm()));
    }

    #[test]
    fn slab_transform_is_a_contraction(m in 2usize..8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = m - 1;
        let mut mk = || matrix(q, q, &mut rng);
        let (a, _) = embed_stpp_pair(&mk(), &mk(), &mk(), &mk()).unwrap();
        let mut prev = 0.0;
        for r in 0..=m {
            let plan = TruncationPlan::new(m, r).unwrap();
            let e: f64 = slab_partial_fft(&a, &plan, EmbeddedSide::A).unwrap().values().iter().map(|z| z.norm_sqr()).sum();
            prop_assert!(e >= prev - 1e-12);
            prop_assert!(e <= a.norm_l2().powi(2) + 1e-10);
            prev = e;
        }
        prop_assert!((prev - a.norm_l2().powi(2)).abs() < 1e-10);
    }

    #[test]
    fn truncation_is_exact_at_full_width(n in 1usize..14, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (matrix(n, n, &mut rng), matrix(n, n, &mut rng));
        let m = (n + n % 2) / 2 + 1;
        let c = stpp_truncated_square(&a, &b, m).unwrap();
        prop_assert!((c - &a * &b).norm() < 1e-9 * (1.0 + (&a * &b).norm()));
        prop_assert_eq!(stpp_truncated_square(&a, &b, 0).unwrap().norm(), 0.0);
    }

    #[test]
    fn atpq_bounds(n in 1usize..9, r_frac in 0.0f64..1.0) {
        let r = 1 + ((n - 1) as f64 * r_frac) as usize;
        let t = ap_triplet(n, r).unwrap();
        let rep = atpq_count(&t).unwrap();
        prop_assert!(rep.rho >= (n * n * n) as u64);
        prop_assert_eq!(rep.rho, atpq_count_naive(&t).unwrap());
        let buckets: u64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| rep.bucket(i, j)).sum();
        prop_assert_eq!(buckets, rep.rho);
        let lb = lower_bound_check(&t).unwrap();
        prop_assert!(lb.rho >= lb.bound);
    }

    #[test]
    fn polyform_full_width_is_exact(n in 1usize..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (matrix(n, n, &mut rng), matrix(n, n, &mut rng));
        let c = polyform(&a, &b, n, seed).unwrap();
        prop_assert!((c - &a * &b).norm() < 1e-9 * (1.0 + (&a * &b).norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn records_round_trip(seed in any::<u64>(), n in 2usize..9, alg_idx in 0usize..4) {
        let alg = [Algorithm::Polyform, Algorithm::JlSketch, Algorithm::StppFourier, Algorithm::SvdBaseline][alg_idx];
        let mut cfg = ExperimentConfig::new(alg, n);
        cfg.trials = 2;
        cfg.seed = seed;
        cfg.distribution = DistributionKind::Gaussian;
        cfg.r = RSchedule::Auto;
        let recs = run_experiment(&cfg).unwrap().records;
        prop_assert_eq!(&read_csv(to_csv_string(&recs).unwrap().as_bytes()).unwrap(), &recs);
        prop_assert_eq!(&read_json(&to_json_string(&recs).unwrap()).unwrap(), &recs);
    }

    #[test]
    fn experiments_are_deterministic(seed in any::<u64>(), n in 2usize..9) {
        let mut cfg = ExperimentConfig::new(Algorithm::Polyform, n);
        cfg.trials = 3;
        cfg.seed = seed;
        cfg.record_wall_time = false;
        let one = run_experiment(&cfg).unwrap().records;
        cfg.parallel = true;
        prop_assert_eq!(one, run_experiment(&cfg).unwrap().records);
    }
}
