use std::fs;
use std::process::{Command, Output};

fn cseval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cseval"))
        .args(args)
        .env_remove("CSEVAL_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn certify_identity_has_zero_coherence() {
    let out = cseval(&["certify", "--kind", "identity", "--m", "4", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["coherence"].as_f64(), Some(0.0));
    assert_eq!(v["nsp_order"].as_u64(), Some(2));
}

#[test]
fn recover_planted_instance() {
    let out = cseval(&[
        "recover", "--kind", "gaussian", "--n", "20", "--m", "10", "--k", "2", "--solver", "omp", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["success"], true);
    assert_eq!(v["k"].as_u64(), Some(2));
    assert!(v["metrics"]["recovery_error"].as_f64().unwrap() < 1e-9);
}

#[test]
fn missing_campaign_config_is_a_runtime_error() {
    let out = cseval(&["campaign", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("missing.json") && err.to_lowercase().contains("no such file"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(cseval(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cseval(&["certify", "--bogus"]).status.code(), Some(1));
    assert_eq!(cseval(&["recover", "--kind", "hexagonal", "--n", "4"]).status.code(), Some(1));
    assert_eq!(cseval(&["--help"]).status.code(), Some(0));
}

#[test]
fn invalid_dimensions_are_runtime_errors() {
    let out = cseval(&["certify", "--kind", "gaussian", "--m", "9", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn campaign_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    fs::write(&config, r#"{"n":16,"m":8,"k":[1,2],"solver":["omp","bp"],"trials":3,"seed":4}"#).unwrap();
    let out_dir = dir.path().join("out");
    let out = cseval(&[
        "campaign",
        config.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--threads",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["trial_rows"].as_u64(), Some(12));
    let csv = fs::read_to_string(out_dir.join("trials.csv")).unwrap();
    assert_eq!(csv.lines().count(), 13);
    assert!(out_dir.join("aggregates.json").exists() && out_dir.join("manifest.json").exists());
}

#[test]
fn bad_campaign_config_reports_path() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    fs::write(&config, r#"{"n":16,"k":2,"trials":0}"#).unwrap();
    let out = cseval(&["campaign", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trials"));
}

#[test]
fn phase_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = cseval(&[
        "phase", "--n", "20", "--grid", "3", "--trials", "2", "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("phase.csv")).unwrap();
    assert_eq!(csv.lines().count(), 10);
    assert!(fs::read_to_string(dir.path().join("phase.svg")).unwrap().starts_with("<svg"));
}

#[test]
fn gen_then_certify_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = cseval(&[
        "gen", "--kind", "toeplitz", "--m", "4", "--n", "8", "--k", "2", "--seed", "3", "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let matrix = dir.path().join("matrix.json");
    let out = cseval(&["certify", "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["matrix"]["kind"], "toeplitz");

    let out = cseval(&[
        "recover",
        "--matrix",
        matrix.to_str().unwrap(),
        "--signal",
        dir.path().join("signal.json").to_str().unwrap(),
        "--solver",
        "oracle",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["k"].as_u64(), Some(2));
}
