//! Closed forms for the spectra of the embedding regions and the covariance c_ab.

use convmm::analysis::{c_ab_formula, indicator_spectrum, s_delta, t_delta, DistributionSpec, SignalSide};

fn main() -> convmm::Result<()> {
    let m = 7;
    for xi in [[0, 0, 0], [0, 3, 0], [2, 0, 5], [1, 2, 3]] {
        let ind: Vec<String> = (1..=3).map(|i| format!("{:+.4}", indicator_spectrum(m, i, xi).unwrap())).collect();
        println!("xi={xi:?}  regions [{}]  T={:>3}  S(r=3)={}", ind.join(", "), t_delta(m, xi)?, s_delta(m, 3, xi)?);
    }
    for dist in [DistributionSpec::rademacher(), DistributionSpec::bernoulli01(), DistributionSpec::gaussian()] {
        let c: Vec<String> = [[0, 0, 0], [0, 2, 0], [1, 0, 4], [1, 2, 3]]
            .iter()
            .map(|&d| format!("{:.4}", c_ab_formula(&dist, SignalSide::A, m, d).unwrap()))
            .collect();
        println!("{:>14}: c_A at deltas = [{}]", dist.kind.name(), c.join(", "));
    }
    Ok(())
}
