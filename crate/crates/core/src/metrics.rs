//! Per-trial efficiency metrics and the metric-to-process registry.
//!
//! Kernels that can hit a zero denominator return
//! [`Error::UndefinedMetric`]; ratios whose error energy is exactly zero
//! return `f64::INFINITY`. [`MetricReport`] turns both into explicit
//! markers.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::norm_inf;
use crate::model::{sparsity_level, SparseSignal};

fn check_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

fn error_energy(x: &[f64], x_hat: &[f64]) -> f64 {
    x.iter().zip(x_hat).map(|(p, q)| (p - q) * (p - q)).sum()
}

fn signal_energy(x: &[f64], metric: &'static str) -> Result<f64> {
    let e: f64 = x.iter().map(|v| v * v).sum();
    if e == 0.0 {
        return Err(Error::UndefinedMetric {
            metric,
            reason: "original signal has zero norm",
        });
    }
    Ok(e)
}

/// `‖x − x̂‖₂ / ‖x‖₂`.
pub fn recovery_error(x: &[f64], x_hat: &[f64]) -> Result<f64> {
    check_len(x, x_hat)?;
    let e = signal_energy(x, "recovery_error")?;
    Ok(error_energy(x, x_hat).sqrt() / e.sqrt())
}

/// Mean squared error over the `N` components.
pub fn mse(x: &[f64], x_hat: &[f64]) -> Result<f64> {
    check_len(x, x_hat)?;
    if x.is_empty() {
        return Err(Error::invalid("mse needs at least one component"));
    }
    Ok(error_energy(x, x_hat) / x.len() as f64)
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn is_constant(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

/// Product-moment correlation coefficient, evaluated in centered form and
/// clamped to `[−1, 1]`.
pub fn correlation(x: &[f64], x_hat: &[f64]) -> Result<f64> {
    Ok(correlation_unclamped(x, x_hat)?.clamp(-1.0, 1.0))
}

pub(crate) fn correlation_unclamped(x: &[f64], x_hat: &[f64]) -> Result<f64> {
    check_len(x, x_hat)?;
    if x.len() < 2 {
        return Err(Error::invalid("correlation needs at least two components"));
    }
    if is_constant(x) || is_constant(x_hat) {
        return Err(Error::UndefinedMetric {
            metric: "correlation",
            reason: "a constant vector has zero variance",
        });
    }
    let (mx, my) = (mean(x), mean(x_hat));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (p, q) in x.iter().zip(x_hat) {
        let (dp, dq) = (p - mx, q - my);
        sxy += dp * dq;
        sxx += dp * dp;
        syy += dq * dq;
    }
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}

/// Population covariance `E[(x − E x)(x̂ − E x̂)]`.
pub fn covariance(x: &[f64], x_hat: &[f64]) -> Result<f64> {
    check_len(x, x_hat)?;
    if x.is_empty() {
        return Err(Error::invalid("covariance needs at least one component"));
    }
    let (mx, my) = (mean(x), mean(x_hat));
    let s: f64 = x.iter().zip(x_hat).map(|(p, q)| (p - mx) * (q - my)).sum();
    Ok(s / x.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ErrorSparsity {
    /// `‖x̂‖₀ − k` with the recovered support thresholded at `tol`.
    pub count_delta: i64,
    /// Size of the symmetric difference of the two supports.
    pub support_mismatch: usize,
}

pub fn error_sparsity(x: &SparseSignal, x_hat: &[f64], tol: f64) -> Result<ErrorSparsity> {
    check_len(x.values(), x_hat)?;
    let mut in_x = vec![false; x.n()];
    for &i in x.support() {
        in_x[i] = true;
    }
    let mismatch = x_hat
        .iter()
        .zip(&in_x)
        .filter(|(v, &sx)| (v.abs() > tol) != sx)
        .count();
    Ok(ErrorSparsity {
        count_delta: sparsity_level(x_hat, tol) as i64 - x.k() as i64,
        support_mismatch: mismatch,
    })
}

/// `m / n`.
pub fn compression_ratio(m: usize, n: usize) -> Result<f64> {
    if m == 0 || m > n {
        return Err(Error::invalid(format!("compression ratio needs 1 <= m <= n, got {m}/{n}")));
    }
    Ok(m as f64 / n as f64)
}

/// `10 log₁₀(Σx² / Σ(x − x̂)²)` in dB; `+∞` when the error energy is zero.
pub fn snr_db(x: &[f64], x_hat: &[f64]) -> Result<f64> {
    Ok(10.0 * energy_ratio(x, x_hat, "snr_db")?.log10())
}

/// Per-trial recovery SNR `‖x‖² / ‖x − x̂‖²`; `+∞` when the error energy is
/// zero. Campaign aggregates average it over trials.
pub fn rsnr(x: &[f64], x_hat: &[f64]) -> Result<f64> {
    energy_ratio(x, x_hat, "rsnr")
}

fn energy_ratio(x: &[f64], x_hat: &[f64], metric: &'static str) -> Result<f64> {
    check_len(x, x_hat)?;
    let s = signal_energy(x, metric)?;
    let e = error_energy(x, x_hat);
    Ok(if e == 0.0 { f64::INFINITY } else { s / e })
}

/// Number of coordinates where `|y − ŷ| > tol`.
pub fn hamming_distance(y: &[f64], y_hat: &[f64], tol: f64) -> Result<usize> {
    check_len(y, y_hat)?;
    Ok(y.iter().zip(y_hat).filter(|(p, q)| (*p - *q).abs() > tol).count())
}

/// `1e-6 · max(1, ‖y‖∞)`.
pub fn default_hamming_tol(y: &[f64]) -> f64 {
    1e-6 * norm_inf(y).max(1.0)
}

/// Default relative threshold for counting recovered nonzeros.
pub fn default_sparsity_tol(x: &[f64]) -> f64 {
    1e-6 * norm_inf(x).max(1.0)
}

pub const DEFAULT_SUCCESS_THRESHOLD: f64 = 0.9;

/// Recovery counts as a success when the relative error is at most
/// `1 − threshold`.
pub fn is_success(x: &[f64], x_hat: &[f64], threshold: f64) -> Result<bool> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::invalid(format!("success threshold must lie in (0, 1], got {threshold}")));
    }
    Ok(recovery_error(x, x_hat)? <= 1.0 - threshold)
}

/// Success flag for a trial, extending [`is_success`] to the zero signal:
/// recovering an all-zero signal succeeds only if `x̂` is exactly zero.
pub fn trial_success(x: &[f64], x_hat: &[f64], threshold: f64) -> Result<bool> {
    if x.iter().all(|v| *v == 0.0) {
        check_len(x, x_hat)?;
        return Ok(x_hat.iter().all(|v| *v == 0.0));
    }
    is_success(x, x_hat, threshold)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuccessRates {
    pub success_rate: f64,
    pub failure_rate: f64,
}

/// Success and failure rates over a set of trial outcomes; `None` for an
/// empty set.
pub fn success_rates(flags: &[bool]) -> Option<SuccessRates> {
    if flags.is_empty() {
        return None;
    }
    let s = flags.iter().filter(|f| **f).count() as f64 / flags.len() as f64;
    Some(SuccessRates {
        success_rate: s,
        failure_rate: 1.0 - s,
    })
}

/// The three compressive-sensing processes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Process {
    SparseRepresentation,
    SamplingMatrix,
    Recovery,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricDescriptor {
    pub name: &'static str,
    pub processes: &'static [Process],
    /// Defining formula or procedure, in plain notation.
    pub formula: &'static str,
}

impl MetricDescriptor {
    pub fn involves(&self, p: Process) -> bool {
        self.processes.contains(&p)
    }
}

use Process::{Recovery as Rec, SamplingMatrix as Sam, SparseRepresentation as Rep};

static REGISTRY: [MetricDescriptor; 18] = [
    MetricDescriptor { name: "Coherence", processes: &[Sam, Rec], formula: "max_{i<j} |<a_i, a_j>| over unit columns; >= sqrt((N-M)/(M(N-1)))" },
    MetricDescriptor { name: "RIP", processes: &[Sam], formula: "(1-d_k)||x||^2 <= ||Ax||^2 <= (1+d_k)||x||^2 for k-sparse x" },
    MetricDescriptor { name: "NSP", processes: &[Rec], formula: "spark(A) > 2k" },
    MetricDescriptor { name: "Sparsity", processes: &[Rep], formula: "k = ||x||_0" },
    MetricDescriptor { name: "Error sparsity", processes: &[Rep], formula: "||x_hat||_0 - ||x||_0 and support symmetric difference" },
    MetricDescriptor { name: "Measurements bounds", processes: &[Sam, Rec], formula: "M >= C s ln(N/s)" },
    MetricDescriptor { name: "Recovery error, MSE", processes: &[Rec], formula: "||x - x_hat|| / ||x||; sum (x - x_hat)^2 / N" },
    MetricDescriptor { name: "Correlation/covariance", processes: &[Rec], formula: "Pearson coefficient; E[(x - Ex)(x_hat - Ex_hat)]" },
    MetricDescriptor { name: "Recovery time", processes: &[Rec], formula: "wall-clock seconds in the solver" },
    MetricDescriptor { name: "Sampling time", processes: &[Sam], formula: "wall-clock seconds computing Ax + n" },
    MetricDescriptor { name: "Compression ratio", processes: &[Sam, Rec], formula: "M / N" },
    MetricDescriptor { name: "Signal to error ratio", processes: &[Sam], formula: "10 log10(sum x^2 / sum (x - x_hat)^2)" },
    MetricDescriptor { name: "Recovery SNR", processes: &[Sam], formula: "||x||^2 / E||x - x_hat||^2" },
    MetricDescriptor { name: "Recovery success rate/ Failure rate", processes: &[Sam], formula: "fraction of trials with relative error <= 1 - threshold; failure = 1 - success" },
    MetricDescriptor { name: "Phase transition diagram", processes: &[Sam], formula: "success probability over (M/N, K/M)" },
    MetricDescriptor { name: "Recovered SNR", processes: &[Sam], formula: "SNR of the recovered signal" },
    MetricDescriptor { name: "Hamming distance", processes: &[Sam], formula: "||y - y_hat||_0" },
    MetricDescriptor { name: "Complexity", processes: &[Rep, Sam, Rec], formula: "measured as sampling, recovery and processing time" },
];

/// The metric-to-process classification, in table order.
pub fn metric_registry() -> &'static [MetricDescriptor] {
    &REGISTRY
}

/// Case-insensitive lookup by registry name.
pub fn lookup(name: &str) -> Option<&'static MetricDescriptor> {
    REGISTRY.iter().find(|d| d.name.eq_ignore_ascii_case(name.trim()))
}

/// A metric value or an explicit marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricValue {
    Finite(f64),
    Infinite,
    Undefined,
}

impl MetricValue {
    fn from_result(r: Result<f64>) -> Self {
        match r {
            Ok(v) if v.is_finite() => MetricValue::Finite(v),
            Ok(v) if v == f64::INFINITY => MetricValue::Infinite,
            _ => MetricValue::Undefined,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            MetricValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// CSV cell: 17 significant digits, `inf`, or `undefined`.
    pub fn to_csv(self) -> String {
        match self {
            MetricValue::Finite(v) => format_f64(v),
            MetricValue::Infinite => "inf".to_string(),
            MetricValue::Undefined => "undefined".to_string(),
        }
    }

    pub fn parse_csv(s: &str) -> Result<Self> {
        match s {
            "inf" => Ok(MetricValue::Infinite),
            "undefined" => Ok(MetricValue::Undefined),
            other => other
                .parse::<f64>()
                .map(MetricValue::Finite)
                .map_err(|e| Error::Parse {
                    path: "metric".into(),
                    message: format!("`{other}`: {e}"),
                }),
        }
    }
}

impl Serialize for MetricValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MetricValue::Finite(v) => s.serialize_f64(*v),
            MetricValue::Infinite => s.serialize_str("infinite"),
            MetricValue::Undefined => s.serialize_str("undefined"),
        }
    }
}

/// Decimal rendering with 17 significant digits, round-trip exact.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Thresholds applied when scoring a trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub sparsity_tol: f64,
    pub hamming_tol: f64,
    pub success_threshold: f64,
}

/// Wall-clock timings of one trial, in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Timings {
    pub sampling_time_s: f64,
    pub recovery_time_s: f64,
    pub processing_time_s: f64,
}

/// Everything a trial produces that the metrics need.
pub struct TrialData<'a> {
    pub x: &'a SparseSignal,
    pub x_hat: &'a [f64],
    /// Measurements fed to the solver.
    pub y: &'a [f64],
    /// `A·x̂`.
    pub y_hat: &'a [f64],
    pub m: usize,
    pub timings: Timings,
}

/// Metric values for one trial, in registry order followed by timings.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    entries: Vec<(&'static str, MetricValue)>,
    pub success: bool,
    pub tolerances: Tolerances,
}

impl MetricReport {
    /// Column names in report order.
    pub const COLUMNS: [&'static str; 14] = [
        "error_sparsity_count",
        "error_sparsity_support",
        "recovery_error",
        "mse",
        "correlation",
        "covariance",
        "compression_ratio",
        "snr_db",
        "rsnr",
        "success",
        "hamming_distance",
        "sampling_time_s",
        "recovery_time_s",
        "processing_time_s",
    ];

    /// Scores a trial. `None` thresholds fall back to
    /// [`default_sparsity_tol`] and [`default_hamming_tol`].
    pub fn compute(
        d: &TrialData<'_>,
        sparsity_tol: Option<f64>,
        hamming_tol: Option<f64>,
        success_threshold: f64,
    ) -> Result<Self> {
        let x = d.x.values();
        check_len(x, d.x_hat)?;
        check_len(d.y, d.y_hat)?;
        let tolerances = Tolerances {
            sparsity_tol: sparsity_tol.unwrap_or_else(|| default_sparsity_tol(x)),
            hamming_tol: hamming_tol.unwrap_or_else(|| default_hamming_tol(d.y)),
            success_threshold,
        };
        let es = error_sparsity(d.x, d.x_hat, tolerances.sparsity_tol)?;
        let success = trial_success(x, d.x_hat, success_threshold)?;
        let count = |v: usize| MetricValue::Finite(v as f64);
        let entries = vec![
            ("error_sparsity_count", MetricValue::Finite(es.count_delta as f64)),
            ("error_sparsity_support", count(es.support_mismatch)),
            ("recovery_error", MetricValue::from_result(recovery_error(x, d.x_hat))),
            ("mse", MetricValue::from_result(mse(x, d.x_hat))),
            ("correlation", MetricValue::from_result(correlation(x, d.x_hat))),
            ("covariance", MetricValue::from_result(covariance(x, d.x_hat))),
            ("compression_ratio", MetricValue::from_result(compression_ratio(d.m, x.len()))),
            ("snr_db", MetricValue::from_result(snr_db(x, d.x_hat))),
            ("rsnr", MetricValue::from_result(rsnr(x, d.x_hat))),
            ("success", count(success as usize)),
            ("hamming_distance", count(hamming_distance(d.y, d.y_hat, tolerances.hamming_tol)?)),
            ("sampling_time_s", MetricValue::Finite(d.timings.sampling_time_s)),
            ("recovery_time_s", MetricValue::Finite(d.timings.recovery_time_s)),
            ("processing_time_s", MetricValue::Finite(d.timings.processing_time_s)),
        ];
        Ok(MetricReport {
            entries,
            success,
            tolerances,
        })
    }

    pub fn get(&self, name: &str) -> Option<MetricValue> {
        self.entries.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    pub fn entries(&self) -> &[(&'static str, MetricValue)] {
        &self.entries
    }

    pub fn csv_header() -> String {
        Self::COLUMNS.join(",")
    }

    pub fn csv_row(&self) -> String {
        self.entries.iter().map(|(_, v)| v.to_csv()).collect::<Vec<_>>().join(",")
    }

    /// The value of `name` if it is finite.
    pub fn value(&self, name: &str) -> Option<f64> {
        self.get(name).and_then(MetricValue::finite)
    }
}

impl Serialize for MetricReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.entries.len() + 3))?;
        for (name, v) in &self.entries {
            map.serialize_entry(name, v)?;
        }
        map.serialize_entry("sparsity_tol", &self.tolerances.sparsity_tol)?;
        map.serialize_entry("hamming_tol", &self.tolerances.hamming_tol)?;
        map.serialize_entry("success_threshold", &self.tolerances.success_threshold)?;
        map.end()
    }
}
