use std::process::{Command, Output};

use convmm::bench::{read_csv, read_json, Algorithm};

fn convmm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convmm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn calc_exponent_prints_value() {
    let o = convmm(&["calc", "exponent", "--m", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exponent=2.889"), "{}", stdout(&o));
}

#[test]
fn calc_threshold_prints_n() {
    let o = convmm(&["calc", "threshold", "--m", "8", "--c", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N=22"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["bench", "sweep", "--alg", "nope", "--n", "8"][..],
        &["bench", "sweep", "--alg", "polyform", "--n", "8", "--r", "9"],
        &["bench", "sweep", "--alg", "polyform", "--n", "8", "--dist", "cauchy"],
        &["bench", "run", "--config", "/nonexistent/config.json"],
        &["calc", "exponent", "--m", "2"],
        &["calc", "threshold", "--m", "8", "--c", "-1"],
        &["frobnicate"],
        &[],
    ] {
        assert_eq!(convmm(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(convmm(&["--help"]).status.code(), Some(0));
    assert_eq!(convmm(&["bench", "sweep", "--help"]).status.code(), Some(0));
}

#[test]
fn verify_all_passes() {
    let o = convmm(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn sweep_csv_to_stdout() {
    let o = convmm(&["bench", "sweep", "--alg", "jl_sketch", "--n", "12", "--r", "2,4", "--trials", "3", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = read_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(recs.len(), 6);
    assert!(recs.iter().all(|r| r.algorithm == Algorithm::JlSketch && r.n == 12 && r.normalized_error >= 0.0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("# jl_sketch"));
}

#[test]
fn sweep_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = convmm(&[
        "bench", "sweep", "--alg", "naive", "--n", "6", "--r", "0,3", "--trials", "2", "--format", "json", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let recs = read_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(recs.len(), 4);
    assert!(recs.iter().all(|r| r.normalized_error == 0.0));
    assert!(stdout(&o).starts_with("# naive"));
}

#[test]
fn bench_run_reads_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"algorithm":"svd_baseline","n":10,"r":[0,10],"trials":2,"seed":3}"#).unwrap();
    let o = convmm(&["bench", "run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let recs = read_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(recs.len(), 4);
    assert!(recs.iter().filter(|r| r.r == 10).all(|r| r.normalized_error < 1e-20));

    std::fs::write(&cfg, r#"{"algorithm":"svd_baseline","n":10,"bogus":1}"#).unwrap();
    assert_eq!(convmm(&["bench", "run", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn exactness_contract_maps_to_exit_two() {
    // a correct build cannot trip the contract from the command line; check the mapping
    assert!(convmm::Error::BoundViolated("x".into()).is_numerical());
    assert!(!convmm::Error::InvalidParameter("x".into()).is_numerical());
    for alg in [Algorithm::Polyform, Algorithm::StppFourier, Algorithm::TppFourier, Algorithm::SvdBaseline] {
        let (_, hi) = alg.r_range(9);
        assert!(alg.is_exact_at(hi, 9) && !alg.is_exact_at(hi - 1, 9), "{alg}");
    }
    assert!(Algorithm::Naive.is_exact_at(0, 9) && !Algorithm::JlSketch.is_exact_at(9, 9));
}

#[test]
fn full_budget_sweeps_pass_the_contract() {
    for alg in ["polyform", "tpp_fourier", "stpp_fourier", "svd_baseline", "naive", "exact_stpp"] {
        let o = convmm(&["bench", "sweep", "--alg", alg, "--n", "9", "--trials", "2", "--no-rank"]);
        assert_eq!(o.status.code(), Some(0), "{alg}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
