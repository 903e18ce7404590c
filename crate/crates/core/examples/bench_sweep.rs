//! Seeded experiment sweep, summarized and written as CSV.

use convmm::analysis::DistributionKind;
use convmm::bench::{render, run_experiment, Algorithm, ExperimentConfig, OutputFormat, RSchedule};

fn main() -> convmm::Result<()> {
    let mut cfg = ExperimentConfig::new(Algorithm::StppFourier, 40);
    cfg.r = RSchedule::Auto;
    cfg.trials = 4;
    cfg.distribution = DistributionKind::Bernoulli01;
    cfg.seed = 2024;
    let report = run_experiment(&cfg)?;
    for s in &report.summary {
        println!("r={:>2} budget={:>6} mean={:.3e} std={:.1e}", s.r, s.budget, s.mean, s.std);
    }
    let csv = render(&report.records, OutputFormat::Csv)?;
    println!("{} CSV lines, header: {}", csv.lines().count(), csv.lines().next().unwrap_or(""));
    Ok(())
}
