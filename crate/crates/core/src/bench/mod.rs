//! Experiment sweeps: configuration, seeded trials, summaries, and CSV / JSON
//! records.
//!
//! Trial `t` draws its inputs from `ChaCha8(splitmix64(seed ^ t))`; randomized
//! algorithms use `splitmix64(trial_seed ^ splitmix64(r))`. All budgets of a
//! trial share one input pair.

mod config;
mod output;
mod run;

pub use config::{linear_schedule, Algorithm, ExperimentConfig, OutputFormat, RSchedule, AUTO_STEPS};
pub use output::{emit, load, read_csv, read_json, render, to_csv_string, to_json_string, write_csv, CSV_HEADER};
pub use run::{
    algorithm_seed, run_experiment, splitmix64, EXACT_TOL, summarize, trial_inputs, trial_seed, ExperimentReport, RSummary,
    TrialRecord,
};
