//! Monte-Carlo campaigns: sweeps over `(matrix, n, m, k, solver)`, per-trial
//! metric records, per-group aggregates and on-disk outputs.
//!
//! # Config schema
//!
//! A JSON object; unknown keys are rejected.
//!
//! | key | type | default |
//! |-----|------|---------|
//! | `n` | integer or list | required |
//! | `k` | integer or list | required |
//! | `m` | integer or list | `measurement_bound(n, max(k, 1), 2)` per `(n, k)` |
//! | `matrix` | name or list | `["gaussian"]` |
//! | `solver` | name, object, or list | `["omp"]` |
//! | `trials` | integer ≥ 1 | `100` |
//! | `seed` | integer | `0` |
//! | `noise` | `{"kind": "none"}` or `{"kind": "awgn", "sigma": s}` | none |
//! | `amplitude` | `"unit_gaussian"` or `"signed_ones"` | `"unit_gaussian"` |
//! | `normalize` | bool | `true` |
//! | `success_threshold` | number in (0, 1] | `0.9` |
//! | `sparsity_tol`, `hamming_tol` | number | scaled defaults from `metrics` |
//! | `archive` | bool | `false` |
//! | `output_dir` | path | none |
//! | `threads` | integer ≥ 1 | global pool |
//!
//! Combinations that cannot be built (`m > n`, `k > n`, identity with
//! `m ≠ n`) are skipped and listed in the result.
//!
//! # Timing
//!
//! `sampling_time_s` covers `A·x + noise`, `recovery_time_s` the solver call
//! and `processing_time_s` the whole trial from matrix construction through
//! the residual `A·x̂`, all from the monotonic clock.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};
use sha2::{Digest, Sha256};

use crate::certify::measurement_bound;
use crate::error::{Error, Result};
use crate::linalg::mat_vec;
use crate::metrics::{MetricReport, MetricValue, Timings, TrialData, DEFAULT_SUCCESS_THRESHOLD};
use crate::model::{Amplitude, MatrixKind, NoiseModel};
use crate::recovery::{SolverConfig, SolverKind};
use crate::rng::derive_seed;
use crate::trial::{plant, solve, Setup};

/// Header of `trials.csv`.
pub const TRIALS_HEADER: &str = "trial_id,seed,matrix_kind,solver,n,m,k,sampling_time_s,recovery_time_s,processing_time_s,recovery_error,mse,correlation,covariance,error_sparsity_count,error_sparsity_support,compression_ratio,snr_db,rsnr,hamming_distance,success,converged";

/// Columns of `trials.csv` that hold wall-clock measurements.
pub const TIMING_COLUMNS: [&str; 3] = ["sampling_time_s", "recovery_time_s", "processing_time_s"];

/// Resolution assumed for the monotonic clock, in seconds.
pub const TIMER_RESOLUTION_S: f64 = 1e-9;

/// Constant used for the default `m`.
pub const DEFAULT_M_CONSTANT: f64 = 2.0;

const AGGREGATED: [&str; 13] = [
    "recovery_error",
    "mse",
    "correlation",
    "covariance",
    "error_sparsity_count",
    "error_sparsity_support",
    "compression_ratio",
    "snr_db",
    "rsnr",
    "hamming_distance",
    "sampling_time_s",
    "recovery_time_s",
    "processing_time_s",
];

/// Accepts either a single value or a list of values.
fn one_or_many<'de, D, T>(d: D) -> std::result::Result<Vec<T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    use serde::de::{value, IntoDeserializer, MapAccess, SeqAccess, Visitor};
    use std::marker::PhantomData;

    struct OneOrMany<T>(PhantomData<T>);

    impl<'de, T: Deserialize<'de>> Visitor<'de> for OneOrMany<T> {
        type Value = Vec<T>;

        fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            f.write_str("a value or a list of values")
        }

        fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Vec<T>, E> {
            T::deserialize(v.into_deserializer()).map(|x| vec![x])
        }

        fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Vec<T>, E> {
            T::deserialize(v.into_deserializer()).map(|x| vec![x])
        }

        fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<Vec<T>, E> {
            T::deserialize(v.into_deserializer()).map(|x| vec![x])
        }

        fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Vec<T>, E> {
            T::deserialize(v.into_deserializer()).map(|x| vec![x])
        }

        fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<Vec<T>, A::Error> {
            T::deserialize(value::MapAccessDeserializer::new(map)).map(|x| vec![x])
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Vec<T>, A::Error> {
            let mut out = Vec::new();
            while let Some(x) = seq.next_element()? {
                out.push(x);
            }
            Ok(out)
        }
    }

    d.deserialize_any(OneOrMany(PhantomData))
}

fn opt_one_or_many<'de, D, T>(d: D) -> std::result::Result<Option<Vec<T>>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    one_or_many(d).map(Some)
}

fn default_matrix() -> Vec<MatrixKind> {
    vec![MatrixKind::Gaussian]
}
fn default_solver() -> Vec<SolverConfig> {
    vec![SolverKind::Omp.into()]
}
fn default_trials() -> usize {
    100
}
fn default_threshold() -> f64 {
    DEFAULT_SUCCESS_THRESHOLD
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    #[serde(deserialize_with = "one_or_many")]
    pub n: Vec<usize>,
    #[serde(deserialize_with = "one_or_many")]
    pub k: Vec<usize>,
    #[serde(default, deserialize_with = "opt_one_or_many", skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<usize>>,
    #[serde(default = "default_matrix", deserialize_with = "one_or_many")]
    pub matrix: Vec<MatrixKind>,
    #[serde(default = "default_solver", deserialize_with = "one_or_many")]
    pub solver: Vec<SolverConfig>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub noise: NoiseModel,
    #[serde(default)]
    pub amplitude: Amplitude,
    #[serde(default = "yes")]
    pub normalize: bool,
    #[serde(default = "default_threshold")]
    pub success_threshold: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparsity_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamming_tol: Option<f64>,
    #[serde(default)]
    pub archive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Worker threads; does not affect any non-timing output.
    #[serde(default, skip_serializing)]
    pub threads: Option<usize>,
}

fn at(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Parses and validates a campaign document. Errors name the offending path.
pub fn parse_config(text: &str) -> Result<CampaignConfig> {
    let c: CampaignConfig = crate::io::from_json(text)?;
    c.validate()?;
    Ok(c)
}

impl CampaignConfig {
    /// A config with the given sweeps and all other fields at their defaults.
    pub fn new(n: Vec<usize>, k: Vec<usize>) -> Self {
        CampaignConfig {
            n,
            k,
            m: None,
            matrix: default_matrix(),
            solver: default_solver(),
            trials: default_trials(),
            seed: 0,
            noise: NoiseModel::None,
            amplitude: Amplitude::default(),
            normalize: true,
            success_threshold: default_threshold(),
            sparsity_tol: None,
            hamming_tol: None,
            archive: false,
            output_dir: None,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let lists = [
            ("n", self.n.is_empty()),
            ("k", self.k.is_empty()),
            ("m", self.m.as_ref().is_some_and(Vec::is_empty)),
            ("matrix", self.matrix.is_empty()),
            ("solver", self.solver.is_empty()),
        ];
        if let Some((path, _)) = lists.iter().find(|(_, empty)| *empty) {
            return Err(at(path, "sweep list must not be empty"));
        }
        if let Some(i) = self.n.iter().position(|n| *n == 0) {
            return Err(at(&format!("n[{i}]"), "signal length must be positive"));
        }
        if let Some(i) = self.m.iter().flatten().position(|m| *m == 0) {
            return Err(at(&format!("m[{i}]"), "measurement count must be positive"));
        }
        if let Some(i) = self.matrix.iter().position(|k| *k == MatrixKind::Custom) {
            return Err(at(&format!("matrix[{i}]"), "campaigns need a generated ensemble"));
        }
        if self.trials == 0 {
            return Err(at("trials", "must be at least 1"));
        }
        if !(self.success_threshold > 0.0 && self.success_threshold <= 1.0) {
            return Err(at("success_threshold", "must lie in (0, 1]"));
        }
        if let Err(e) = NoiseModel::awgn(self.noise.sigma()) {
            return Err(at("noise.sigma", e.to_string()));
        }
        for (name, tol) in [("sparsity_tol", self.sparsity_tol), ("hamming_tol", self.hamming_tol)] {
            if tol.is_some_and(|t| !(t >= 0.0 && t.is_finite())) {
                return Err(at(name, "must be finite and non-negative"));
            }
        }
        if self.threads == Some(0) {
            return Err(at("threads", "must be at least 1"));
        }
        for (i, s) in self.solver.iter().enumerate() {
            if let Err(e) = s.spec_for(1, 1, 0.0).validate() {
                return Err(at(&format!("solver[{i}]"), e.to_string()));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form of the config.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        hex(&Sha256::digest(text.as_bytes()))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// One `(matrix, n, m, k)` point of the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Combination {
    pub matrix_kind: MatrixKind,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    #[serde(skip)]
    coords: [u64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Skipped {
    #[serde(flatten)]
    pub combination: Combination,
    pub reason: String,
}

/// Expands the sweeps in `matrix, n, m, k` order.
pub fn combinations(c: &CampaignConfig) -> (Vec<Combination>, Vec<Skipped>) {
    let mut ok = Vec::new();
    let mut skipped = Vec::new();
    for (mi, &kind) in c.matrix.iter().enumerate() {
        for (ni, &n) in c.n.iter().enumerate() {
            let ms: Vec<Option<usize>> = match &c.m {
                Some(ms) => ms.iter().copied().map(Some).collect(),
                None => vec![None],
            };
            for (mj, m) in ms.into_iter().enumerate() {
                for (ki, &k) in c.k.iter().enumerate() {
                    let m = m.unwrap_or_else(|| {
                        measurement_bound(n, k.clamp(1, n), DEFAULT_M_CONSTANT).unwrap_or(n)
                    });
                    let combo = Combination {
                        matrix_kind: kind,
                        n,
                        m,
                        k,
                        coords: [mi as u64, ni as u64, mj as u64, ki as u64],
                    };
                    let reason = if m > n {
                        Some(format!("m = {m} exceeds n = {n}"))
                    } else if k > n {
                        Some(format!("k = {k} exceeds n = {n}"))
                    } else if kind == MatrixKind::Identity && m != n {
                        Some("identity ensemble requires m = n".to_string())
                    } else {
                        None
                    };
                    match reason {
                        Some(reason) => skipped.push(Skipped {
                            combination: combo,
                            reason,
                        }),
                        None => ok.push(combo),
                    }
                }
            }
        }
    }
    (ok, skipped)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArchivedTrial {
    pub x: Vec<f64>,
    pub x_hat: Vec<f64>,
    pub y: Vec<f64>,
    pub y_hat: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial_id: usize,
    /// Index of the solver in the config.
    pub solver_index: usize,
    /// Trial number within its combination.
    pub trial: usize,
    pub seed: u64,
    pub combination: Combination,
    pub solver: SolverKind,
    pub report: MetricReport,
    pub converged: bool,
    /// Metric success and solver convergence.
    pub success: bool,
    pub archive: Option<ArchivedTrial>,
}

impl TrialRecord {
    pub fn timings(&self) -> Timings {
        Timings {
            sampling_time_s: self.report.value("sampling_time_s").unwrap_or(0.0),
            recovery_time_s: self.report.value("recovery_time_s").unwrap_or(0.0),
            processing_time_s: self.report.value("processing_time_s").unwrap_or(0.0),
        }
    }

    /// The row of `trials.csv`, without a line terminator.
    pub fn csv_row(&self) -> String {
        let c = &self.combination;
        let cell = |name: &str| self.report.get(name).unwrap_or(MetricValue::Undefined).to_csv();
        let count = |name: &str| match self.report.get(name) {
            Some(MetricValue::Finite(v)) => format!("{}", v as i64),
            other => other.unwrap_or(MetricValue::Undefined).to_csv(),
        };
        [
            self.trial_id.to_string(),
            self.seed.to_string(),
            c.matrix_kind.to_string(),
            self.solver.to_string(),
            c.n.to_string(),
            c.m.to_string(),
            c.k.to_string(),
            cell("sampling_time_s"),
            cell("recovery_time_s"),
            cell("processing_time_s"),
            cell("recovery_error"),
            cell("mse"),
            cell("correlation"),
            cell("covariance"),
            count("error_sparsity_count"),
            count("error_sparsity_support"),
            cell("compression_ratio"),
            cell("snr_db"),
            cell("rsnr"),
            count("hamming_distance"),
            self.success.to_string(),
            self.converged.to_string(),
        ]
        .join(",")
    }
}

/// Mean and population standard deviation over the finite values of a
/// metric; infinite and undefined values are counted separately.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub mean: Option<f64>,
    pub stddev: Option<f64>,
    pub finite: usize,
    pub infinite: usize,
    pub undefined: usize,
}

impl Summary {
    pub fn of(values: impl IntoIterator<Item = MetricValue>) -> Self {
        let mut finite = Vec::new();
        let (mut infinite, mut undefined) = (0, 0);
        for v in values {
            match v {
                MetricValue::Finite(x) => finite.push(x),
                MetricValue::Infinite => infinite += 1,
                MetricValue::Undefined => undefined += 1,
            }
        }
        let (mean, stddev) = if finite.is_empty() {
            (None, None)
        } else {
            let n = finite.len() as f64;
            let mean = finite.iter().sum::<f64>() / n;
            let var = finite.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
            (Some(mean), Some(var.sqrt()))
        };
        Summary {
            mean,
            stddev,
            finite: finite.len(),
            infinite,
            undefined,
        }
    }
}

/// Aggregates for one `(matrix, solver, n, m, k)` group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub matrix_kind: MatrixKind,
    pub solver: SolverKind,
    pub solver_index: usize,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub trials: usize,
    pub success_rate: f64,
    pub failure_rate: f64,
    pub converged_rate: f64,
    /// Expected recovery SNR over the group; infinite if any trial recovered
    /// the signal exactly, undefined if every value is undefined.
    pub mean_rsnr: MetricValue,
    pub metrics: BTreeMap<&'static str, Summary>,
}

fn aggregate(records: &[TrialRecord]) -> Aggregate {
    let first = &records[0];
    let n = records.len() as f64;
    let successes = records.iter().filter(|r| r.success).count() as f64;
    let metrics = AGGREGATED
        .iter()
        .map(|&name| {
            let values = records.iter().map(|r| r.report.get(name).unwrap_or(MetricValue::Undefined));
            (name, Summary::of(values))
        })
        .collect::<BTreeMap<_, _>>();
    let rsnr = &metrics["rsnr"];
    let mean_rsnr = if rsnr.infinite > 0 {
        MetricValue::Infinite
    } else {
        rsnr.mean.map_or(MetricValue::Undefined, MetricValue::Finite)
    };
    Aggregate {
        matrix_kind: first.combination.matrix_kind,
        solver: first.solver,
        solver_index: first.solver_index,
        n: first.combination.n,
        m: first.combination.m,
        k: first.combination.k,
        trials: records.len(),
        success_rate: successes / n,
        failure_rate: 1.0 - successes / n,
        converged_rate: records.iter().filter(|r| r.converged).count() as f64 / n,
        mean_rsnr,
        metrics,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignResult {
    pub config: CampaignConfig,
    /// Ordered by combination, then solver, then trial.
    pub records: Vec<TrialRecord>,
    pub aggregates: Vec<Aggregate>,
    pub skipped: Vec<Skipped>,
}

/// Runs every trial of the sweep. Trial `t` of a combination uses the seed
/// `derive_seed(seed, &[matrix, n, m, k, t])` (sweep indices), shared by
/// all solvers so they face identical instances.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignResult> {
    config.validate()?;
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start {t} worker threads: {e}")))?
            .install(|| run_all(config)),
        None => run_all(config),
    }
}

fn run_all(c: &CampaignConfig) -> Result<CampaignResult> {
    let (combos, skipped) = combinations(c);
    let work: Vec<(usize, usize, usize)> = (0..combos.len())
        .flat_map(|ci| (0..c.solver.len()).flat_map(move |si| (0..c.trials).map(move |t| (ci, si, t))))
        .collect();
    let records: Vec<TrialRecord> = work
        .par_iter()
        .enumerate()
        .map(|(id, &(ci, si, t))| run_trial(c, &combos[ci], si, t, id))
        .collect::<Result<_>>()?;
    let aggregates = records.chunks(c.trials).map(aggregate).collect();
    Ok(CampaignResult {
        config: c.clone(),
        records,
        aggregates,
        skipped,
    })
}

fn run_trial(c: &CampaignConfig, combo: &Combination, si: usize, t: usize, id: usize) -> Result<TrialRecord> {
    let [a, b, d, e] = combo.coords;
    let seed = derive_seed(c.seed, &[a, b, d, e, t as u64]);
    let solver = &c.solver[si];
    let wrap = |err: Error| Error::Trial {
        coordinates: format!(
            "id={id} matrix={} n={} m={} k={} solver={} trial={t} seed={seed}", combo.matrix_kind, combo.n, combo.m, combo.k, solver.kind
        ),
        source: Box::new(err),
    };
    let setup = Setup {
        kind: combo.matrix_kind,
        n: combo.n,
        m: combo.m,
        k: combo.k,
        amplitude: c.amplitude,
        noise: c.noise,
        normalize: c.normalize,
    };
    let start = Instant::now();
    let planted = plant(&setup, seed).map_err(wrap)?;
    let result = solve(&planted, &setup, solver).map_err(wrap)?;
    let y_hat = mat_vec(planted.a.entries(), &result.x_hat);
    let processing = start.elapsed().as_secs_f64();

    let timings = Timings {
        sampling_time_s: planted.y.sampling_time,
        recovery_time_s: result.recovery_time,
        processing_time_s: processing,
    };
    let data = TrialData {
        x: &planted.x,
        x_hat: &result.x_hat,
        y: &planted.y.y,
        y_hat: &y_hat,
        m: combo.m,
        timings,
    };
    let report =
        MetricReport::compute(&data, c.sparsity_tol, c.hamming_tol, c.success_threshold).map_err(wrap)?;
    let archive = c.archive.then(|| ArchivedTrial {
        x: planted.x.values().to_vec(),
        x_hat: result.x_hat.clone(),
        y: planted.y.y.clone(),
        y_hat: y_hat.clone(),
    });
    Ok(TrialRecord {
        trial_id: id,
        solver_index: si,
        trial: t,
        seed,
        combination: *combo,
        solver: solver.kind,
        success: report.success && result.converged,
        converged: result.converged,
        report,
        archive,
    })
}

impl CampaignResult {
    pub fn trials_csv(&self) -> String {
        let mut out = String::with_capacity(256 * (self.records.len() + 1));
        out.push_str(TRIALS_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }

    pub fn aggregates_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            groups: &'a [Aggregate],
            skipped: &'a [Skipped],
        }
        let mut s = serde_json::to_string_pretty(&Doc {
            groups: &self.aggregates,
            skipped: &self.skipped,
        })
        .expect("aggregates serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimerInfo {
    pub clock: &'static str,
    pub resolution_s: f64,
    pub sampling_time_s: &'static str,
    pub recovery_time_s: &'static str,
    pub processing_time_s: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_sha256: String,
    pub config: CampaignConfig,
    pub trial_rows: usize,
    pub aggregate_rows: usize,
    pub skipped_combinations: usize,
    pub files: Vec<String>,
    pub timers: TimerInfo,
}

/// Writes `trials.csv`, `aggregates.json`, `manifest.json` and, when the
/// config asks for it, `archive.jsonl` (one `{trial_id, x, x_hat, y, y_hat}`
/// object per line) into `dir`, creating it if needed.
pub fn write_outputs(result: &CampaignResult, dir: &Path) -> Result<Manifest> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let write = |name: &str, text: &str| {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| Error::io(path, e))
    };
    let mut files = vec!["trials.csv".to_string(), "aggregates.json".to_string()];
    write("trials.csv", &result.trials_csv())?;
    write("aggregates.json", &result.aggregates_json())?;
    if result.config.archive {
        let mut text = String::new();
        for r in &result.records {
            if let Some(a) = &r.archive {
                let line = serde_json::json!({
                    "trial_id": r.trial_id,
                    "x": a.x,
                    "x_hat": a.x_hat,
                    "y": a.y,
                    "y_hat": a.y_hat,
                });
                text.push_str(&line.to_string());
                text.push('\n');
            }
        }
        write("archive.jsonl", &text)?;
        files.push("archive.jsonl".to_string());
    }
    files.push("manifest.json".to_string());
    let manifest = Manifest {
        tool: "cseval",
        version: env!("CARGO_PKG_VERSION"),
        config_sha256: result.config.hash(),
        config: result.config.clone(),
        trial_rows: result.records.len(),
        aggregate_rows: result.aggregates.len(),
        skipped_combinations: result.skipped.len(),
        files,
        timers: TimerInfo {
            clock: "monotonic (std::time::Instant)",
            resolution_s: TIMER_RESOLUTION_S,
            sampling_time_s: "matrix-vector product plus noise addition",
            recovery_time_s: "solver call",
            processing_time_s: "matrix construction through the residual of the estimate",
        },
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write("manifest.json", &text)?;
    Ok(manifest)
}

/// Replaces the timing columns of a `trials.csv` document with `-`, leaving
/// every other byte intact.
pub fn strip_timing_columns(csv: &str) -> String {
    let header: Vec<&str> = TRIALS_HEADER.split(',').collect();
    let timing: Vec<usize> = TIMING_COLUMNS
        .iter()
        .filter_map(|c| header.iter().position(|h| h == c))
        .collect();
    let mut out = String::with_capacity(csv.len());
    for (i, line) in csv.lines().enumerate() {
        if i == 0 {
            out.push_str(line);
        } else {
            let cells: Vec<&str> = line
                .split(',')
                .enumerate()
                .map(|(j, c)| if timing.contains(&j) { "-" } else { c })
                .collect();
            out.push_str(&cells.join(","));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests;
