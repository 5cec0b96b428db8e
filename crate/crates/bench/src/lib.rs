//! Fixtures shared by the criterion benchmarks.

use cseval::{build_matrix, generate_sparse_signal, measure, Amplitude, MatrixKind, MeasurementMatrix, Measurements, NoiseModel};

/// A noiseless planted Gaussian instance with fixed seeds.
pub fn planted(n: usize, m: usize, k: usize) -> (MeasurementMatrix, Measurements) {
    let a = build_matrix(MatrixKind::Gaussian, m, n, 1, true).expect("valid dimensions");
    let x = generate_sparse_signal(n, k, Amplitude::UnitGaussian, 2).expect("valid sparsity");
    let y = measure(&a, x.values(), NoiseModel::None, 3).expect("matching shapes");
    (a, y)
}
