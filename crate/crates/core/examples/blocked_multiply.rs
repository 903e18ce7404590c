//! Exact square product by recursive blocking over the batched convolution.

use convmm::exact_mm::{blocked_multiply, BlockingScheme};
use convmm::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> convmm::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (m, n_factors, side) in [(3, 1, 4), (3, 2, 13), (4, 2, 36), (5, 1, 8)] {
        let a = Matrix::from_fn(side, side, |_, _| rng.random_range(-1.0..1.0));
        let b = Matrix::from_fn(side, side, |_, _| rng.random_range(-1.0..1.0));
        let c = blocked_multiply(m, n_factors, &a, &b)?;
        let padded = BlockingScheme::new(m, n_factors)?.pad(side)?;
        let rel = (c - &a * &b).norm() / (&a * &b).norm();
        println!("m={m} N={n_factors} side={side} (padding {padded}): relative error {rel:.2e}");
    }
    Ok(())
}
