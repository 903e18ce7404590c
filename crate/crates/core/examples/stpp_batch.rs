//! Several independent products from one convolution on Z_m^{3N}.

use convmm::constructions::{cksu_stpp, verify_stpp};
use convmm::exact_mm::stpp_batch_multiply;
use convmm::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> convmm::Result<()> {
    let (m, n_factors) = (4, 2);
    let family = cksu_stpp(m, n_factors)?;
    let q = family.q();
    println!(
        "{} triplets of side {q} on |G| = {}, simultaneous TPP: {}",
        family.triplets().len(),
        family.group().size(),
        verify_stpp(&family)?
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mk = || Matrix::from_fn(q, q, |_, _| rng.random_range(-1.0..1.0));
    let a: Vec<Matrix> = (0..family.triplets().len()).map(|_| mk()).collect();
    let b: Vec<Matrix> = (0..family.triplets().len()).map(|_| mk()).collect();
    let c = stpp_batch_multiply(m, n_factors, &a, &b)?;
    for (l, cl) in c.iter().enumerate() {
        println!("product {l}: |C - AB|_F = {:.2e}", (cl - &a[l] * &b[l]).norm());
    }
    Ok(())
}
