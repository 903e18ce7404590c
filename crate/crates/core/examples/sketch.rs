//! Gaussian sketch baseline, alone and composed with the exact convolution product.

use convmm::analysis::{error_metrics, DistributionSpec};
use convmm::approx_mm::{jl_sketch_mm_with, sketch_and_solve_with, SketchSpec};
use convmm::exact_mm::{Execution, StppMultiplier};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> convmm::Result<()> {
    let n = 48;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let d = DistributionSpec::rademacher();
    let (a, b) = (d.sample_matrix(n, n, &mut rng)?, d.sample_matrix(n, n, &mut rng)?);
    let mult = StppMultiplier::new(5, 1)?;
    for r in [2, 4, 8, 16] {
        let s = SketchSpec::new(n, r, r as u64)?.matrix();
        let jl = jl_sketch_mm_with(&a, &b, &s)?;
        let ss = sketch_and_solve_with(&a, &b, &s, &mult, Execution::Sequential)?;
        let err = error_metrics(&jl, &(&a * &b), &a, &b)?.normalized_error;
        println!("r={r:>2}: error {err:.4} (1/r = {:.4}), |sketch-and-solve - sketch|_F = {:.1e}", 1.0 / r as f64, (ss - &jl).norm());
    }
    Ok(())
}
