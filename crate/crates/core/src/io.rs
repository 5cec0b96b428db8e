//! Matrix and signal files: row-major CSV with 17 significant digits, and a
//! JSON envelope `{kind, m, n, seed, normalized, data}`.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::format_f64;
use crate::model::{Amplitude, MatrixKind, MeasurementMatrix, SparseSignal};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixEnvelope {
    pub kind: MatrixKind,
    pub m: usize,
    pub n: usize,
    pub seed: Option<u64>,
    pub normalized: bool,
    /// Rows of the matrix.
    pub data: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalEnvelope {
    pub n: usize,
    pub k: usize,
    pub support: Vec<usize>,
    #[serde(default)]
    pub amplitude: Option<Amplitude>,
    #[serde(default)]
    pub seed: Option<u64>,
    pub data: Vec<f64>,
}

fn parse_err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.into(),
    }
}

fn csv_line(values: impl Iterator<Item = f64>) -> String {
    values.map(format_f64).collect::<Vec<_>>().join(",")
}

pub fn matrix_to_csv(a: &MeasurementMatrix) -> String {
    let mut out = String::new();
    for row in a.entries().row_iter() {
        out.push_str(&csv_line(row.iter().copied()));
        out.push('\n');
    }
    out
}

fn parse_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| parse_err(format!("line {}", i + 1), e.to_string()))?;
        let row = rec
            .iter()
            .enumerate()
            .map(|(j, cell)| {
                cell.parse::<f64>()
                    .map_err(|e| parse_err(format!("line {}, column {}", i + 1, j + 1), format!("`{cell}`: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn rows_to_matrix(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Err(parse_err("data", "matrix is empty"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(parse_err(format!("data[{i}]"), format!("expected {n} columns, found {}", rows[i].len())));
    }
    Ok(DMatrix::from_fn(m, n, |i, j| rows[i][j]))
}

/// Reads a CSV matrix as a `Custom` matrix.
pub fn matrix_from_csv(text: &str, normalize: bool) -> Result<MeasurementMatrix> {
    MeasurementMatrix::custom(rows_to_matrix(&parse_rows(text)?)?, normalize)
}

pub fn matrix_to_envelope(a: &MeasurementMatrix) -> MatrixEnvelope {
    MatrixEnvelope {
        kind: a.kind(),
        m: a.m(),
        n: a.n(),
        seed: a.seed(),
        normalized: a.is_normalized(),
        data: a.entries().row_iter().map(|r| r.iter().copied().collect()).collect(),
    }
}

pub fn matrix_to_json(a: &MeasurementMatrix) -> String {
    serde_json::to_string_pretty(&matrix_to_envelope(a)).expect("envelope serializes")
}

/// Reads a JSON envelope. The declared shape must match `data`, and a
/// `normalized` envelope must have unit columns within `1e-12`.
pub fn matrix_from_json(text: &str) -> Result<MeasurementMatrix> {
    let env: MatrixEnvelope = from_json(text)?;
    let entries = rows_to_matrix(&env.data)?;
    if entries.nrows() != env.m || entries.ncols() != env.n {
        return Err(parse_err(
            "data",
            format!("declared {}x{} but data is {}x{}", env.m, env.n, entries.nrows(), entries.ncols()),
        ));
    }
    MeasurementMatrix::from_parts(entries, env.kind, env.normalized, env.seed)
}

pub(crate) fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        parse_err(if path == "." { "document".to_string() } else { path }, e.into_inner().to_string())
    })
}

pub fn signal_to_csv(x: &SparseSignal) -> String {
    let mut s = csv_line(x.values().iter().copied());
    s.push('\n');
    s
}

/// Reads a signal stored as one CSV row (or one value per line).
pub fn signal_from_csv(text: &str) -> Result<SparseSignal> {
    let rows = parse_rows(text)?;
    let values: Vec<f64> = if rows.len() == 1 {
        rows.into_iter().next().unwrap_or_default()
    } else if rows.iter().all(|r| r.len() == 1) {
        rows.into_iter().map(|r| r[0]).collect()
    } else {
        return Err(parse_err("data", "signal CSV must be a single row or a single column"));
    };
    if values.is_empty() {
        return Err(parse_err("data", "signal is empty"));
    }
    Ok(SparseSignal::from_dense(values))
}

pub fn signal_to_json(x: &SparseSignal, amplitude: Option<Amplitude>, seed: Option<u64>) -> String {
    let env = SignalEnvelope {
        n: x.n(),
        k: x.k(),
        support: x.support().to_vec(),
        amplitude,
        seed,
        data: x.values().to_vec(),
    };
    serde_json::to_string_pretty(&env).expect("envelope serializes")
}

pub fn signal_from_json(text: &str) -> Result<SparseSignal> {
    let env: SignalEnvelope = from_json(text)?;
    if env.data.len() != env.n {
        return Err(parse_err("n", format!("declared {} but data has {}", env.n, env.data.len())));
    }
    let x = SparseSignal::from_dense(env.data);
    if x.support() != env.support.as_slice() || x.k() != env.k {
        return Err(parse_err("support", "declared support does not match the nonzero entries"));
    }
    Ok(x)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Loads a matrix by extension: `.json` envelopes keep their metadata, any
/// other file is read as CSV into a `Custom` matrix.
pub fn load_matrix(path: &Path, normalize_csv: bool) -> Result<MeasurementMatrix> {
    let text = read(path)?;
    if is_json(path) {
        matrix_from_json(&text)
    } else {
        matrix_from_csv(&text, normalize_csv)
    }
}

pub fn save_matrix(a: &MeasurementMatrix, path: &Path) -> Result<()> {
    let text = if is_json(path) { matrix_to_json(a) } else { matrix_to_csv(a) };
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn load_signal(path: &Path) -> Result<SparseSignal> {
    let text = read(path)?;
    if is_json(path) {
        signal_from_json(&text)
    } else {
        signal_from_csv(&text)
    }
}
