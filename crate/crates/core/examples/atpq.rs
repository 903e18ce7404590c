//! Collision counts of the arithmetic-progression triplets.

use convmm::analysis::{ap_atpq_closed_form, atpq_count, lower_bound_check};
use convmm::constructions::ap_triplet;

fn main() -> convmm::Result<()> {
    let n = 12;
    println!("{:>3} {:>10} {:>10} {:>10} {:>8}", "r", "rho", "closed", "bound", "factor");
    for r in 1..=n {
        let t = ap_triplet(n, r)?;
        let rep = atpq_count(&t)?;
        let lb = lower_bound_check(&t)?;
        println!("{r:>3} {:>10} {:>10} {:>10} {:>8.4}", rep.rho, ap_atpq_closed_form(n, r), lb.bound, rep.error_factor());
    }
    Ok(())
}
