//! Signals, measurement matrices and the forward model `y = A·x + n`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::DMatrix;
use rand::seq::index;
use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng::rng_from_seed;

/// Amplitude distribution of the nonzero entries of a planted signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Amplitude {
    #[default]
    UnitGaussian,
    SignedOnes,
}

impl FromStr for Amplitude {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "unit_gaussian" | "gaussian" => Ok(Amplitude::UnitGaussian),
            "signed_ones" | "ones" => Ok(Amplitude::SignedOnes),
            other => Err(Error::invalid(format!("unknown amplitude `{other}`"))),
        }
    }
}

/// A length-`n` real vector with an explicit support.
///
/// The support is sorted, every entry on it is nonzero and every entry off
/// it is exactly zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseSignal {
    values: Vec<f64>,
    support: Vec<usize>,
}

impl SparseSignal {
    /// Wraps a dense vector; the support is its set of nonzero entries.
    pub fn from_dense(values: Vec<f64>) -> Self {
        let support = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, _)| i)
            .collect();
        SparseSignal { values, support }
    }

    pub fn zeros(n: usize) -> Self {
        SparseSignal {
            values: vec![0.0; n],
            support: Vec::new(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Sparsity level (number of nonzeros).
    pub fn k(&self) -> usize {
        self.support.len()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Draws a `k`-sparse signal of length `n`.
///
/// The support is sampled uniformly without replacement; amplitudes are then
/// drawn in increasing index order. Bit-identical for equal arguments.
pub fn generate_sparse_signal(
    n: usize,
    k: usize,
    amplitude: Amplitude,
    seed: u64,
) -> Result<SparseSignal> {
    if n == 0 {
        return Err(Error::invalid("signal length n must be positive"));
    }
    if k > n {
        return Err(Error::invalid(format!(
            "sparsity k = {k} exceeds signal length n = {n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut support = index::sample(&mut rng, n, k).into_vec();
    support.sort_unstable();
    let mut values = vec![0.0; n];
    for &i in &support {
        values[i] = match amplitude {
            Amplitude::SignedOnes => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            Amplitude::UnitGaussian => loop {
                let v: f64 = rng.sample(StandardNormal);
                if v != 0.0 {
                    break v;
                }
            },
        };
    }
    Ok(SparseSignal { values, support })
}

/// Count of entries with `|v[i]| > tol`.
pub fn sparsity_level(v: &[f64], tol: f64) -> usize {
    v.iter().filter(|x| x.abs() > tol).count()
}

/// Measurement ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Identity,
    Gaussian,
    Bernoulli,
    PartialDct,
    Toeplitz,
    Circulant,
    Custom,
}

impl MatrixKind {
    pub const RANDOM: [MatrixKind; 5] = [
        MatrixKind::Gaussian,
        MatrixKind::Bernoulli,
        MatrixKind::PartialDct,
        MatrixKind::Toeplitz,
        MatrixKind::Circulant,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Identity => "identity",
            MatrixKind::Gaussian => "gaussian",
            MatrixKind::Bernoulli => "bernoulli",
            MatrixKind::PartialDct => "partial_dct",
            MatrixKind::Toeplitz => "toeplitz",
            MatrixKind::Circulant => "circulant",
            MatrixKind::Custom => "custom",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "identity" => MatrixKind::Identity,
            "gaussian" => MatrixKind::Gaussian,
            "bernoulli" => MatrixKind::Bernoulli,
            "partial_dct" | "dct" => MatrixKind::PartialDct,
            "toeplitz" => MatrixKind::Toeplitz,
            "circulant" => MatrixKind::Circulant,
            "custom" => MatrixKind::Custom,
            other => return Err(Error::invalid(format!("unknown matrix kind `{other}`"))),
        })
    }
}

/// An `m × n` sensing matrix with its ensemble tag.
///
/// `column_norms` holds the l2 norms of the columns as generated, before any
/// normalization; for a normalized matrix, multiplying column `j` by
/// `column_norms[j]` restores the raw ensemble draw.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementMatrix {
    entries: DMatrix<f64>,
    kind: MatrixKind,
    columns_normalized: bool,
    column_norms: Vec<f64>,
    seed: Option<u64>,
}

impl MeasurementMatrix {
    /// Wraps user-supplied entries as a `Custom` matrix.
    pub fn custom(entries: DMatrix<f64>, normalize: bool) -> Result<Self> {
        Self::assemble(entries, MatrixKind::Custom, normalize, None)
    }

    /// Rebuilds a matrix from stored entries. A `normalized` claim is
    /// verified to `1e-12` rather than reapplied.
    pub(crate) fn from_parts(
        entries: DMatrix<f64>,
        kind: MatrixKind,
        normalized: bool,
        seed: Option<u64>,
    ) -> Result<Self> {
        let mut a = Self::assemble(entries, kind, false, seed)?;
        if normalized {
            if let Some(j) = a.column_norms.iter().position(|c| (c - 1.0).abs() > 1e-12) {
                return Err(Error::invalid(format!(
                    "matrix is declared normalized but column {j} has norm {}",
                    a.column_norms[j]
                )));
            }
            a.columns_normalized = true;
        }
        Ok(a)
    }

    fn assemble(
        mut entries: DMatrix<f64>,
        kind: MatrixKind,
        normalize: bool,
        seed: Option<u64>,
    ) -> Result<Self> {
        if entries.nrows() == 0 || entries.ncols() == 0 {
            return Err(Error::invalid("matrix must have at least one row and column"));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        let column_norms: Vec<f64> = entries.column_iter().map(|c| c.norm()).collect();
        if normalize {
            if let Some(j) = column_norms.iter().position(|&c| c == 0.0) {
                return Err(Error::DegenerateMatrix(format!(
                    "column {j} is zero and cannot be normalized"
                )));
            }
            for (mut col, &norm) in entries.column_iter_mut().zip(&column_norms) {
                col /= norm;
            }
        }
        Ok(MeasurementMatrix {
            entries,
            kind,
            columns_normalized: normalize,
            column_norms,
            seed,
        })
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.entries.nrows()
    }

    pub fn n(&self) -> usize {
        self.entries.ncols()
    }

    pub fn is_normalized(&self) -> bool {
        self.columns_normalized
    }

    pub fn column_norms(&self) -> &[f64] {
        &self.column_norms
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Content fingerprint: first 16 hex digits of SHA-256 over the shape
    /// and the little-endian bytes of the column-major entries.
    pub fn id(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.m() as u64).to_le_bytes());
        h.update((self.n() as u64).to_le_bytes());
        for v in self.entries.iter() {
            h.update(v.to_le_bytes());
        }
        h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Constructs a matrix from the `kind` ensemble, deterministically in
/// `(kind, m, n, seed)`.
///
/// Gaussian and Bernoulli entries are drawn in row-major order. Toeplitz
/// draws `m + n − 1` diagonal values `d` with `A[i][j] = d[j − i + m − 1]`.
/// Circulant draws a length-`n` generator `g` with `A[i][j] = g[(j − i) mod n]`.
/// PartialDct keeps `m` rows, chosen without replacement and kept in
/// increasing order, of the orthonormal DCT-II matrix.
pub fn build_matrix(
    kind: MatrixKind,
    m: usize,
    n: usize,
    seed: u64,
    normalize: bool,
) -> Result<MeasurementMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("matrix dimensions must be positive"));
    }
    if m > n {
        return Err(Error::invalid(format!(
            "m = {m} exceeds n = {n}; sensing matrices must compress"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let entries = match kind {
        MatrixKind::Identity => {
            if m != n {
                return Err(Error::invalid(format!(
                    "identity matrix requires m = n, got {m} x {n}"
                )));
            }
            DMatrix::identity(m, n)
        }
        MatrixKind::Gaussian => {
            let data: Vec<f64> = (0..m * n).map(|_| rng.sample(StandardNormal)).collect();
            DMatrix::from_row_slice(m, n, &data)
        }
        MatrixKind::Bernoulli => {
            let data: Vec<f64> = (0..m * n)
                .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect();
            DMatrix::from_row_slice(m, n, &data)
        }
        MatrixKind::PartialDct => {
            let mut rows = index::sample(&mut rng, n, m).into_vec();
            rows.sort_unstable();
            let nf = n as f64;
            DMatrix::from_fn(m, n, |i, j| {
                let freq = rows[i] as f64;
                let scale = if rows[i] == 0 {
                    (1.0 / nf).sqrt()
                } else {
                    (2.0 / nf).sqrt()
                };
                scale * (std::f64::consts::PI * (2.0 * j as f64 + 1.0) * freq / (2.0 * nf)).cos()
            })
        }
        MatrixKind::Toeplitz => {
            let diag: Vec<f64> = (0..m + n - 1).map(|_| rng.sample(StandardNormal)).collect();
            DMatrix::from_fn(m, n, |i, j| diag[j + m - 1 - i])
        }
        MatrixKind::Circulant => {
            let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            DMatrix::from_fn(m, n, |i, j| g[(j + n - i) % n])
        }
        MatrixKind::Custom => {
            return Err(Error::invalid(
                "custom matrices are loaded from files, not generated",
            ))
        }
    };
    MeasurementMatrix::assemble(entries, kind, normalize, Some(seed))
}

/// Additive measurement noise.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseModel {
    #[default]
    None,
    /// I.i.d. zero-mean Gaussian noise with per-component standard deviation.
    Awgn { sigma: f64 },
}

impl NoiseModel {
    /// Canonical constructor: `sigma = 0` gives [`NoiseModel::None`].
    pub fn awgn(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma < 0.0 {
            return Err(Error::invalid(format!(
                "noise sigma must be finite and non-negative, got {sigma}"
            )));
        }
        Ok(if sigma == 0.0 {
            NoiseModel::None
        } else {
            NoiseModel::Awgn { sigma }
        })
    }

    pub fn sigma(&self) -> f64 {
        match self {
            NoiseModel::None => 0.0,
            NoiseModel::Awgn { sigma } => *sigma,
        }
    }
}

/// Output of the forward model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurements {
    pub y: Vec<f64>,
    pub noise: NoiseModel,
    pub source_matrix_id: String,
    /// Seconds spent in the multiply-and-add.
    pub sampling_time: f64,
}

impl Measurements {
    /// Wraps an externally supplied measurement vector.
    pub fn from_vec(y: Vec<f64>) -> Self {
        Measurements {
            y,
            noise: NoiseModel::None,
            source_matrix_id: String::new(),
            sampling_time: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }
}

/// Computes `y = A·x + n`. The noise vector is drawn from `seed` before the
/// clock starts, so `sampling_time` covers only the product and the sum.
pub fn measure(
    a: &MeasurementMatrix,
    x: &[f64],
    noise: NoiseModel,
    seed: u64,
) -> Result<Measurements> {
    if a.n() != x.len() {
        return Err(Error::invalid(format!(
            "matrix has {} columns but signal has length {}",
            a.n(),
            x.len()
        )));
    }
    let noise = NoiseModel::awgn(noise.sigma())?;
    let draws: Option<Vec<f64>> = match noise {
        NoiseModel::None => None,
        NoiseModel::Awgn { sigma } => {
            let mut rng = rng_from_seed(seed);
            Some(
                (0..a.m())
                    .map(|_| sigma * rng.sample::<f64, _>(StandardNormal))
                    .collect(),
            )
        }
    };
    let start = Instant::now();
    let mut y = linalg::mat_vec(a.entries(), x);
    if let Some(draws) = &draws {
        for (yi, ni) in y.iter_mut().zip(draws) {
            *yi += ni;
        }
    }
    let sampling_time = start.elapsed().as_secs_f64();
    Ok(Measurements {
        y,
        noise,
        source_matrix_id: a.id(),
        sampling_time,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_support() {
        let s = generate_sparse_signal(8, 0, Amplitude::UnitGaussian, 3).unwrap();
        assert_eq!(s.values(), &[0.0; 8]);
        assert!(s.support().is_empty());
        assert_eq!(s.k(), 0);
    }

    #[test]
    fn full_support_signed_ones() {
        let s = generate_sparse_signal(8, 8, Amplitude::SignedOnes, 7).unwrap();
        assert_eq!(s.support(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        assert!(s.values().iter().all(|v| *v == 1.0 || *v == -1.0));
    }

    #[test]
    fn regenerate_bit_identical() {
        let a = generate_sparse_signal(256, 10, Amplitude::UnitGaussian, 1).unwrap();
        let b = generate_sparse_signal(256, 10, Amplitude::UnitGaussian, 1).unwrap();
        assert_eq!(sparsity_level(a.values(), 0.0), 10);
        let bits = |s: &SparseSignal| s.values().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
        assert_eq!(a.support(), b.support());
    }

    #[test]
    fn signal_argument_errors() {
        assert!(matches!(
            generate_sparse_signal(0, 0, Amplitude::UnitGaussian, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            generate_sparse_signal(4, 5, Amplitude::UnitGaussian, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn identity_matrix() {
        let a = build_matrix(MatrixKind::Identity, 4, 4, 99, true).unwrap();
        assert_eq!(a.entries(), &DMatrix::<f64>::identity(4, 4));
        assert!(build_matrix(MatrixKind::Identity, 3, 4, 0, true).is_err());
    }

    #[test]
    fn bernoulli_normalized_entries() {
        let a = build_matrix(MatrixKind::Bernoulli, 2, 4, 3, true).unwrap();
        let h = 1.0 / 2f64.sqrt();
        for v in a.entries().iter() {
            assert!((v.abs() - h).abs() < 1e-15, "{v}");
        }
    }

    #[test]
    fn circulant_matches_generator_row() {
        let a = build_matrix(MatrixKind::Circulant, 4, 8, 5, false).unwrap();
        // independent reconstruction: the generator is the first row, since
        // row 0 is the unshifted generator, and the seed draws it in order
        let mut rng = rng_from_seed(5);
        let g: Vec<f64> = (0..8).map(|_| rng.sample(StandardNormal)).collect();
        assert_eq!(a.entries().row(0).iter().copied().collect::<Vec<_>>(), g);
        for i in 0..4 {
            for j in 0..8 {
                let idx = ((j as i64 - i as i64).rem_euclid(8)) as usize;
                assert_eq!(a.entries()[(i, j)], g[idx]);
            }
        }
    }

    #[test]
    fn matrix_errors() {
        assert!(build_matrix(MatrixKind::Gaussian, 5, 4, 0, true).is_err());
        assert!(build_matrix(MatrixKind::Custom, 2, 4, 0, true).is_err());
        let zero_col = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 0.0]);
        assert!(matches!(
            MeasurementMatrix::custom(zero_col.clone(), true),
            Err(Error::DegenerateMatrix(_))
        ));
        assert!(MeasurementMatrix::custom(zero_col, false).is_ok());
        let inf = DMatrix::from_row_slice(1, 2, &[1.0, f64::INFINITY]);
        assert!(MeasurementMatrix::custom(inf, false).is_err());
    }

    #[test]
    fn partial_dct_rows_orthonormal() {
        let a = build_matrix(MatrixKind::PartialDct, 6, 16, 11, false).unwrap();
        let gram = a.entries() * a.entries().transpose();
        assert!((gram - DMatrix::<f64>::identity(6, 6)).amax() < 1e-12);
    }

    #[test]
    fn identity_measure_is_exact() {
        let a = build_matrix(MatrixKind::Identity, 4, 4, 0, true).unwrap();
        let x = [1.5, 0.0, -2.0, 0.25];
        let y = measure(&a, &x, NoiseModel::None, 0).unwrap();
        assert_eq!(y.y, x.to_vec());
        assert!(y.sampling_time >= 0.0);
        assert_eq!(y.source_matrix_id, a.id());
    }

    #[test]
    fn zero_signal_measures_zero() {
        let a = build_matrix(MatrixKind::Gaussian, 4, 8, 1, true).unwrap();
        let y = measure(&a, &[0.0; 8], NoiseModel::None, 0).unwrap();
        assert_eq!(y.y, vec![0.0; 4]);
    }

    #[test]
    fn noise_is_the_seeded_draw() {
        let a = build_matrix(MatrixKind::Gaussian, 4, 8, 2, true).unwrap();
        let x = generate_sparse_signal(8, 2, Amplitude::UnitGaussian, 2).unwrap();
        let noise = NoiseModel::awgn(0.1).unwrap();
        let y1 = measure(&a, x.values(), noise, 2).unwrap();
        let y2 = measure(&a, x.values(), noise, 2).unwrap();
        assert_eq!(y1.y, y2.y);
        let clean = a.entries() * nalgebra::DVector::from_column_slice(x.values());
        let mut rng = rng_from_seed(2);
        for (i, yi) in y1.y.iter().enumerate() {
            let n: f64 = rng.sample(StandardNormal);
            assert!((yi - clean[i] - 0.1 * n).abs() < 1e-14);
        }
    }

    #[test]
    fn measure_dimension_mismatch() {
        let a = build_matrix(MatrixKind::Gaussian, 4, 8, 2, true).unwrap();
        assert!(measure(&a, &[0.0; 7], NoiseModel::None, 0).is_err());
    }

    #[test]
    fn noise_canonical_form() {
        assert_eq!(NoiseModel::awgn(0.0).unwrap(), NoiseModel::None);
        assert!(NoiseModel::awgn(-1.0).is_err());
        assert_eq!(NoiseModel::awgn(0.5).unwrap().sigma(), 0.5);
    }

    #[test]
    fn sparsity_levels() {
        assert_eq!(sparsity_level(&[0.0; 5], 0.0), 0);
        assert_eq!(sparsity_level(&[1.0, 0.0, 2e-9, 3.0], 1e-8), 2);
        assert_eq!(sparsity_level(&[1.0; 4], 0.0), 4);
    }

    fn kind_strategy() -> impl Strategy<Value = MatrixKind> {
        prop::sample::select(MatrixKind::RANDOM.to_vec())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn generators_are_deterministic(kind in kind_strategy(), m in 1usize..8, extra in 0usize..8, seed: u64) {
            let n = m + extra;
            let a = build_matrix(kind, m, n, seed, true).unwrap();
            let b = build_matrix(kind, m, n, seed, true).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn normalized_columns_have_unit_norm(kind in kind_strategy(), m in 1usize..10, extra in 0usize..10, seed: u64) {
            let a = build_matrix(kind, m, m + extra, seed, true).unwrap();
            for col in a.entries().column_iter() {
                prop_assert!((col.norm() - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn structured_kinds_keep_structure(m in 1usize..8, extra in 0usize..8, seed: u64, normalize: bool) {
            let n = m + extra;
            for kind in [MatrixKind::Toeplitz, MatrixKind::Circulant] {
                let a = build_matrix(kind, m, n, seed, normalize).unwrap();
                // undo normalization before checking the raw structure
                let raw = DMatrix::from_fn(m, n, |i, j| {
                    let s = if normalize { a.column_norms()[j] } else { 1.0 };
                    a.entries()[(i, j)] * s
                });
                for i in 1..m {
                    for j in 1..n {
                        prop_assert!((raw[(i, j)] - raw[(i - 1, j - 1)]).abs() <= 1e-12 * raw[(i - 1, j - 1)].abs().max(1.0));
                    }
                }
                if kind == MatrixKind::Circulant {
                    for i in 1..m {
                        prop_assert!((raw[(i, 0)] - raw[(i - 1, n - 1)]).abs() <= 1e-12 * raw[(i, 0)].abs().max(1.0));
                    }
                }
            }
        }

        #[test]
        fn planted_sparsity_matches_k(n in 1usize..64, frac in 0.0f64..=1.0, seed: u64, signed: bool) {
            let k = ((n as f64) * frac) as usize;
            let amp = if signed { Amplitude::SignedOnes } else { Amplitude::UnitGaussian };
            let s = generate_sparse_signal(n, k, amp, seed).unwrap();
            prop_assert_eq!(sparsity_level(s.values(), 0.0), k);
            prop_assert_eq!(s.k(), k);
            prop_assert!(s.support().windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn measurement_is_linear(seed: u64, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
            let a = build_matrix(MatrixKind::Gaussian, 6, 12, seed, true).unwrap();
            let mut rng = rng_from_seed(seed ^ 1);
            let x1: Vec<f64> = (0..12).map(|_| rng.sample(StandardNormal)).collect();
            let x2: Vec<f64> = (0..12).map(|_| rng.sample(StandardNormal)).collect();
            let mix: Vec<f64> = x1.iter().zip(&x2).map(|(p, q)| alpha * p + beta * q).collect();
            let y = measure(&a, &mix, NoiseModel::None, 0).unwrap().y;
            let y1 = measure(&a, &x1, NoiseModel::None, 0).unwrap().y;
            let y2 = measure(&a, &x2, NoiseModel::None, 0).unwrap().y;
            for i in 0..6 {
                prop_assert!((y[i] - (alpha * y1[i] + beta * y2[i])).abs() < 1e-10);
            }
        }
    }
}
