//! Convolution on Z_4 x Z_6 through the unitary transform, checked against the direct sum.

use convmm::abelian_fft::{convolve, convolve_direct, fft, ifft, AbelianGroup, Signal};

fn main() -> convmm::Result<()> {
    let g = AbelianGroup::new(vec![4, 6])?;
    let a = Signal::from_real(g.clone(), &(0..24).map(|x| (x % 5) as f64 - 2.0).collect::<Vec<_>>())?;
    let b = Signal::delta(g.clone(), g.flat_index(&g.element(vec![1, 2])?))?;

    let fast = convolve(&a, &b)?;
    let slow = convolve_direct(&a, &b)?;
    let dev = fast.values().iter().zip(slow.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    println!("|G| = {}, max |fft conv - direct conv| = {dev:.2e}", g.size());

    let back = ifft(&fft(&a));
    let rt = back.values().iter().zip(a.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    println!("round trip error {rt:.2e}, Parseval {:.6} vs {:.6}", fft(&a).norm_l2(), a.norm_l2());
    Ok(())
}
