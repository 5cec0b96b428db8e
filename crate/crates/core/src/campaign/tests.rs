use super::*;
use crate::metrics::{recovery_error, rsnr};

fn config(text: &str) -> CampaignConfig {
    parse_config(text).unwrap()
}

fn parse_path(text: &str) -> String {
    match parse_config(text) {
        Err(Error::Parse { path, .. }) => path,
        other => panic!("expected a parse error for {text}, got {other:?}"),
    }
}

#[test]
fn minimal_document_fills_defaults() {
    let c = config(r#"{"n":64,"k":4,"matrix":["gaussian"],"solver":["omp"],"trials":10,"seed":1}"#);
    assert_eq!((c.n.clone(), c.k.clone(), c.m.clone()), (vec![64], vec![4], None));
    assert_eq!(c.trials, 10);
    assert_eq!(c.noise, NoiseModel::None);
    assert_eq!(c.success_threshold, 0.9);
    assert!(c.normalize && !c.archive);
    assert_eq!(c.solver[0].kind, SolverKind::Omp);
    let (combos, skipped) = combinations(&c);
    assert!(skipped.is_empty());
    assert_eq!(combos[0].m, 23);
}

#[test]
fn scalar_or_list_and_solver_objects() {
    let c = config(
        r#"{"n":[16,32],"k":2,"m":8,"matrix":"bernoulli",
            "solver":["bp",{"kind":"iht","max_iterations":50,"step":"fixed"}],
            "noise":{"kind":"awgn","sigma":0.01},"amplitude":"signed_ones"}"#,
    );
    assert_eq!(c.n, vec![16, 32]);
    assert_eq!(c.m, Some(vec![8]));
    assert_eq!(c.matrix, vec![MatrixKind::Bernoulli]);
    assert_eq!(c.solver[0].kind, SolverKind::BasisPursuit);
    assert_eq!(c.solver[1].max_iterations, Some(50));
    assert_eq!(c.amplitude, Amplitude::SignedOnes);
}

#[test]
fn k_zero_is_valid() {
    let mut c = config(r#"{"n":12,"k":0,"m":6,"trials":3}"#);
    c.solver = SolverKind::ALL.iter().map(|s| (*s).into()).collect();
    let r = run_campaign(&c).unwrap();
    assert_eq!(r.records.len(), 12);
    for rec in &r.records {
        assert!(rec.success, "{}", rec.solver);
        assert_eq!(rec.report.get("recovery_error"), Some(MetricValue::Undefined));
    }
}

#[test]
fn parse_errors_name_their_path() {
    assert_eq!(parse_path(r#"{"n":64,"k":4,"trials":0}"#), "trials");
    assert_eq!(parse_path(r#"{"n":64,"k":4,"trails":3}"#), "trails");
    assert_eq!(parse_path(r#"{"n":64,"k":4,"noise":{"kind":"awgn","sigma":"x"}}"#), "noise");
    assert_eq!(parse_path(r#"{"n":64,"k":[]}"#), "k");
    assert_eq!(parse_path(r#"{"n":[64,0],"k":1}"#), "n[1]");
    assert_eq!(parse_path(r#"{"n":64,"k":1,"solver":[{"kind":"omp","bogus":1}]}"#), "solver[0].bogus");
    assert_eq!(parse_path(r#"{"n":64,"k":1,"matrix":["custom"]}"#), "matrix[0]");
    assert_eq!(parse_path(r#"{"n":64,"k":1,"success_threshold":1.5}"#), "success_threshold");
    assert_eq!(parse_path(r#"{"n":64,"k":1,"noise":{"kind":"awgn","sigma":-1}}"#), "noise.sigma");
    assert_eq!(parse_path(r#"{"k":1}"#), "document");
    assert!(matches!(parse_config("{"), Err(Error::Parse { .. })));
    let err = parse_config(r#"{"n":64,"k":4,"trails":3}"#).unwrap_err();
    assert!(err.to_string().contains("trails"), "{err}");
}

#[test]
fn identity_square_recovers_exactly() {
    let c = config(r#"{"n":8,"m":8,"k":3,"matrix":"identity","solver":"omp","trials":1}"#);
    let r = run_campaign(&c).unwrap();
    assert_eq!(r.aggregates.len(), 1);
    assert_eq!(r.aggregates[0].success_rate, 1.0);
    assert_eq!(r.records[0].report.value("recovery_error"), Some(0.0));
    assert_eq!(r.aggregates[0].mean_rsnr, MetricValue::Infinite);
}

#[test]
fn skipped_combinations_give_header_only() {
    let c = config(r#"{"n":8,"m":[12],"k":[2],"trials":2}"#);
    let r = run_campaign(&c).unwrap();
    assert!(r.records.is_empty());
    assert_eq!(r.skipped.len(), 1);
    assert_eq!(r.trials_csv(), format!("{TRIALS_HEADER}\n"));
}

#[test]
fn repeat_runs_match_outside_timings() {
    let mut c = config(
        r#"{"n":24,"m":[8,12],"k":[1,3],"matrix":["gaussian","toeplitz"],
            "solver":["omp","iht","bp"],"trials":3,"seed":42}"#,
    );
    c.threads = Some(1);
    let a = run_campaign(&c).unwrap();
    c.threads = Some(4);
    let b = run_campaign(&c).unwrap();
    assert_eq!(strip_timing_columns(&a.trials_csv()), strip_timing_columns(&b.trials_csv()));
    assert_ne!(a.trials_csv(), strip_timing_columns(&a.trials_csv()));
    c.seed = 43;
    let d = run_campaign(&c).unwrap();
    assert_ne!(strip_timing_columns(&a.trials_csv()), strip_timing_columns(&d.trials_csv()));
}

#[test]
fn solvers_share_instances() {
    let c = config(r#"{"n":20,"m":10,"k":2,"solver":["omp","oracle"],"trials":4,"seed":5}"#);
    let r = run_campaign(&c).unwrap();
    let (omp, oracle) = r.records.split_at(4);
    for (p, q) in omp.iter().zip(oracle) {
        assert_eq!(p.seed, q.seed);
        assert_eq!((p.solver, q.solver), (SolverKind::Omp, SolverKind::ExhaustiveOracle));
    }
}

#[test]
fn success_falls_with_sparsity() {
    let c = config(r#"{"n":32,"m":16,"k":[1,2,3,4,5,6,7,8],"trials":100,"seed":11}"#);
    let r = run_campaign(&c).unwrap();
    let rates: Vec<f64> = r.aggregates.iter().map(|a| a.success_rate).collect();
    for w in rates.windows(2) {
        assert!(w[1] <= w[0] + 0.05, "{rates:?}");
    }
    assert!(rates[0] >= 0.95 && rates[7] < rates[0], "{rates:?}");
}

#[test]
fn oracle_budget_error_carries_coordinates() {
    let c = config(r#"{"n":30,"m":15,"k":5,"solver":{"kind":"oracle","oracle_budget":10},"trials":2}"#);
    match run_campaign(&c) {
        Err(Error::Trial { coordinates, source }) => {
            assert!(coordinates.contains("k=5") && coordinates.contains("exhaustive_oracle"), "{coordinates}");
            assert!(matches!(*source, Error::BudgetExceeded { .. }));
        }
        other => panic!("expected a trial error, got {other:?}"),
    }
}

fn read_trials(path: &Path) -> Vec<BTreeMap<String, String>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    reader
        .records()
        .map(|r| header.iter().cloned().zip(r.unwrap().iter().map(String::from)).collect())
        .collect()
}

#[test]
fn outputs_are_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(
        r#"{"n":20,"m":10,"k":[2,4],"solver":["omp","bp"],"trials":5,"seed":9,"archive":true,
            "noise":{"kind":"awgn","sigma":0.001}}"#,
    );
    c.output_dir = Some(dir.path().to_path_buf());
    let r = run_campaign(&c).unwrap();
    let manifest = write_outputs(&r, dir.path()).unwrap();
    assert_eq!(manifest.trial_rows, 20);
    assert_eq!(manifest.aggregate_rows, 4);
    assert_eq!(manifest.config_sha256.len(), 64);

    let rows = read_trials(&dir.path().join("trials.csv"));
    assert_eq!(rows.len(), 20);
    let text = fs::read_to_string(dir.path().join("trials.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), TRIALS_HEADER);

    for row in &rows {
        let t = |k: &str| row[k].parse::<f64>().unwrap();
        let (s, rec, p) = (t("sampling_time_s"), t("recovery_time_s"), t("processing_time_s"));
        assert!(s >= 0.0 && rec >= 0.0);
        assert!(p >= s.max(rec) && p >= s + rec - TIMER_RESOLUTION_S);
    }

    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("aggregates.json")).unwrap()).unwrap();
    for (g, chunk) in doc["groups"].as_array().unwrap().iter().zip(rows.chunks(5)) {
        let flags: Vec<f64> = chunk.iter().map(|r| if r["success"] == "true" { 1.0 } else { 0.0 }).collect();
        let rate = flags.iter().sum::<f64>() / 5.0;
        assert!((g["success_rate"].as_f64().unwrap() - rate).abs() < 1e-9);
        for name in AGGREGATED {
            let vals: Vec<f64> = chunk.iter().filter_map(|r| r[name].parse::<f64>().ok()).filter(|v| v.is_finite()).collect();
            let summary = &g["metrics"][name];
            if vals.is_empty() {
                assert!(summary["mean"].is_null());
                continue;
            }
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vals.len() as f64).sqrt();
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0);
            assert!(close(summary["mean"].as_f64().unwrap(), mean), "{name}");
            assert!(close(summary["stddev"].as_f64().unwrap(), sd), "{name}");
        }
    }

    let archive = fs::read_to_string(dir.path().join("archive.jsonl")).unwrap();
    for (line, row) in archive.lines().zip(&rows) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let vec = |k: &str| -> Vec<f64> { serde_json::from_value(v[k].clone()).unwrap() };
        let (x, x_hat) = (vec("x"), vec("x_hat"));
        let err = recovery_error(&x, &x_hat).unwrap();
        assert_eq!(format!("{err:.16e}"), row["recovery_error"]);
        assert_eq!(MetricValue::parse_csv(&row["rsnr"]).unwrap(), MetricValue::Finite(rsnr(&x, &x_hat).unwrap()));
    }

    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["timers"]["resolution_s"].as_f64(), Some(1e-9));
    assert_eq!(m["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn write_outputs_reports_io_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let r = run_campaign(&config(r#"{"n":8,"k":1,"m":4,"trials":1}"#)).unwrap();
    match write_outputs(&r, &blocker.join("out")) {
        Err(Error::Io { path, .. }) => assert!(path.starts_with(&blocker)),
        other => panic!("expected an io error, got {other:?}"),
    }
}

#[test]
fn ten_trials_ten_rows_and_stable_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(r#"{"n":16,"m":8,"k":2,"trials":10,"seed":42}"#);
    let r = run_campaign(&c).unwrap();
    write_outputs(&r, dir.path()).unwrap();
    let first = fs::read(dir.path().join("manifest.json")).unwrap();
    write_outputs(&r, dir.path()).unwrap();
    assert_eq!(first, fs::read(dir.path().join("manifest.json")).unwrap());
    assert_eq!(r.trials_csv().lines().count(), 11);
}
