//! Exponent of the batched exact algorithm and the size where it wins.

use convmm::exact_mm::{exponent_calculator, threshold_calculator};

fn main() -> convmm::Result<()> {
    for m in [3, 5, 8, 12, 20, 40, 100] {
        let e = exponent_calculator(m)?;
        println!("m={m:>3}  tau={:.4}  eta={:.4}  exponent={:.5}", e.tau, e.eta, e.exponent);
    }
    for (m, c) in [(8, 2.0), (8, 5.0), (10, 2.0), (10, 5.0)] {
        let t = threshold_calculator(m, c)?;
        println!("m={m} C={c}: N={} (side 10^{:.1})", t.n_factors, t.log10_matrix_side);
    }
    Ok(())
}
