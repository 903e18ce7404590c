//! Fourier truncation of a single cyclic TPP embedding.

use convmm::analysis::{error_metrics, DistributionSpec};
use convmm::approx_mm::{tpp_frequency_set, tpp_truncated};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> convmm::Result<()> {
    let n = 16;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let d = DistributionSpec::rademacher();
    let (a, b) = (d.sample_matrix(n, n, &mut rng)?, d.sample_matrix(n, n, &mut rng)?);
    for r in [0, 2, 4, 8, 12, 16] {
        let k = tpp_frequency_set(n, r)?.len();
        let e = error_metrics(&tpp_truncated(&a, &b, r)?, &(&a * &b), &a, &b)?.normalized_error;
        println!("r={r:>2} |K|={k:>5} of {}  error {e:.4e}", n * n * n);
    }
    Ok(())
}
