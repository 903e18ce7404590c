//! Fourier truncation of the two-product embedding to the slabs {some xi_i < r}.

use convmm::analysis::{error_metrics, DistributionSpec, SvdBaseline};
use convmm::approx_mm::{stpp_truncated_square, truncation_effective_side, TruncationPlan};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> convmm::Result<()> {
    let n = 60;
    let m = truncation_effective_side(n) / 2 + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = DistributionSpec::rademacher();
    let (a, b) = (d.sample_matrix(n, n, &mut rng)?, d.sample_matrix(n, n, &mut rng)?);
    let exact = &a * &b;
    let svd = SvdBaseline::new(&exact);
    println!("n={n}, group Z_{m}^3");
    for r in (0..=m).step_by(5).chain([m]) {
        let k = TruncationPlan::new(m, r)?.len();
        let c = stpp_truncated_square(&a, &b, r)?;
        let e = error_metrics(&c, &exact, &a, &b)?.normalized_error;
        let s = error_metrics(&svd.truncate(r.min(n)), &exact, &a, &b)?.normalized_error;
        println!("r={r:>2} |K|={k:>6}  truncation {e:.3e}  best rank-r {s:.3e}");
    }
    Ok(())
}
