//! Randomized PolyForm error against its expected value (floor(n/r) - 1) / n.

use convmm::analysis::{error_metrics, DistributionSpec};
use convmm::approx_mm::polyform;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> convmm::Result<()> {
    let n = 32;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = DistributionSpec::rademacher();
    let (a, b) = (d.sample_matrix(n, n, &mut rng)?, d.sample_matrix(n, n, &mut rng)?);
    let exact = &a * &b;
    for r in [1, 2, 4, 8, 16, 32] {
        let trials = 50;
        let mean = (0..trials)
            .map(|s| error_metrics(&polyform(&a, &b, r, s).unwrap(), &exact, &a, &b).unwrap().normalized_error)
            .sum::<f64>()
            / trials as f64;
        let expected = ((n / r) as f64 - 1.0) / n as f64;
        println!("r={r:>2}  |G|={:>6}  mean error {mean:.4}  expected {expected:.4}", r * n * n);
    }
    Ok(())
}
