//! A 2x3 times 3x4 product read off one cyclic convolution on a TPP triplet.

use convmm::abelian_fft::convolve;
use convmm::constructions::{decode, embed_pair, vanilla_tpp, verify_tpp};
use convmm::Matrix;

fn main() -> convmm::Result<()> {
    let t = vanilla_tpp(2, 3, 4)?;
    println!("group Z_{}, S={:?} T={:?} U={:?}, TPP: {}", t.group().size(), t.s(), t.t(), t.u(), verify_tpp(&t)?);

    let a = Matrix::from_fn(2, 3, |i, k| (i * 3 + k) as f64);
    let b = Matrix::from_fn(3, 4, |k, j| 1.0 + k as f64 - j as f64);
    let (ea, eb) = embed_pair(&a, &b, &t, None)?;
    let c = decode(&convolve(&ea, &eb)?, &t, None)?;
    println!("C = {c:.1}");
    println!("|C - AB|_F = {:.2e}", (c - &a * &b).norm());
    Ok(())
}
