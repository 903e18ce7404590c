use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use convmm::analysis::DistributionKind;
use convmm::bench::{emit, render, run_experiment, Algorithm, ExperimentConfig, ExperimentReport, OutputFormat, RSchedule};
use convmm::exact_mm::{exponent_calculator, threshold_calculator};
use convmm::verify::verify_all;
use convmm::Error;

/// Exact and approximate matrix products through group convolutions.
#[derive(Parser)]
#[command(name = "convmm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run experiment sweeps.
    #[command(subcommand)]
    Bench(Bench),
    /// Runtime calculators for the exact algorithm.
    #[command(subcommand)]
    Calc(Calc),
    /// Run the property suite.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand)]
enum Bench {
    /// Run a sweep described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the config's output format.
        #[arg(long)]
        format: Option<OutputFormat>,
    },
    /// Run a sweep described on the command line.
    Sweep {
        #[arg(long)]
        alg: Algorithm,
        #[arg(long)]
        n: usize,
        /// `auto` or a comma-separated list.
        #[arg(long, default_value = "auto")]
        r: RSchedule,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value = "rademacher")]
        dist: DistributionKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Group modulus for exact_stpp and sketch_and_solve.
        #[arg(long)]
        m: Option<usize>,
        /// Number of Z_m^3 factors for exact_stpp and sketch_and_solve.
        #[arg(long = "N")]
        n_factors: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        /// Skip the per-output SVD.
        #[arg(long)]
        no_rank: bool,
        /// Write wall_ms as 0.
        #[arg(long)]
        no_time: bool,
        /// Run trials in parallel.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Subcommand)]
enum Calc {
    /// Exponent of the batched algorithm at modulus m.
    Exponent {
        #[arg(long)]
        m: usize,
    },
    /// Smallest N at which the batched algorithm beats C n^3 log n.
    Threshold {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        c: f64,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Every check.
    All,
}

const USAGE: u8 = 1;
const NUMERICAL: u8 = 2;

fn code(e: &Error) -> u8 {
    if e.is_numerical() {
        NUMERICAL
    } else {
        USAGE
    }
}

fn finish(report: &ExperimentReport) -> Result<(), Error> {
    let cfg = &report.config;
    match &cfg.output {
        Some(path) => {
            emit(&report.records, cfg.format, path)?;
            print_summary(report, &mut std::io::stdout())?;
        }
        None => {
            print!("{}", render(&report.records, cfg.format)?);
            print_summary(report, &mut std::io::stderr())?;
        }
    }
    Ok(())
}

fn print_summary(report: &ExperimentReport, w: &mut dyn Write) -> Result<(), Error> {
    let cfg = &report.config;
    writeln!(w, "# {} n={} (effective {}) trials={} dist={}", cfg.algorithm, cfg.n, report.effective_n, cfg.trials, cfg.distribution)?;
    writeln!(w, "# {:>5} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}", "r", "mean", "std", "min", "max", "1/r", "budget")?;
    for s in &report.summary {
        let reference = s.reference.map_or("-".to_string(), |x| format!("{x:.6e}"));
        writeln!(
            w,
            "# {:>5} {:>12.6e} {:>12.6e} {:>12.6e} {:>12.6e} {:>12} {:>12}",
            s.r, s.mean, s.std, s.min, s.max, reference, s.budget
        )?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Bench(Bench::Run { config, out, format }) => {
            let mut cfg = ExperimentConfig::from_file(&config)?;
            if out.is_some() {
                cfg.output = out;
            }
            if let Some(f) = format {
                cfg.format = f;
            }
            finish(&run_experiment(&cfg)?)?;
        }
        Command::Bench(Bench::Sweep { alg, n, r, trials, dist, seed, m, n_factors, out, format, no_rank, no_time, parallel }) => {
            let mut cfg = ExperimentConfig::new(alg, n);
            cfg.r = r;
            cfg.trials = trials;
            cfg.distribution = dist;
            cfg.seed = seed;
            cfg.m = m;
            cfg.n_factors = n_factors;
            cfg.output = out;
            cfg.format = format;
            cfg.rank_diagnostics = !no_rank;
            cfg.record_wall_time = !no_time;
            cfg.parallel = parallel;
            finish(&run_experiment(&cfg)?)?;
        }
        Command::Calc(Calc::Exponent { m }) => {
            let e = exponent_calculator(m)?;
            println!("m={} tau={:.6} eta={:.6} exponent={:.6}", e.m, e.tau, e.eta, e.exponent);
        }
        Command::Calc(Calc::Threshold { m, c }) => {
            let t = threshold_calculator(m, c)?;
            println!("m={} C={} N={} matrix_side=10^{:.3}", t.m, t.c, t.n_factors, t.log10_matrix_side);
        }
        Command::Verify(Verify::All) => {
            let outcomes = verify_all();
            let mut ok = true;
            for o in &outcomes {
                println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
                ok &= o.passed;
            }
            if !ok {
                return Ok(NUMERICAL);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(code(&e))
        }
    }
}
