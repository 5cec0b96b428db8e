//! One planted experiment: matrix, signal, measurements, recovery.

use crate::error::Result;
use crate::model::{
    build_matrix, generate_sparse_signal, measure, Amplitude, MatrixKind, MeasurementMatrix,
    Measurements, NoiseModel, SparseSignal,
};
use crate::recovery::{recover, RecoveryResult, SolverConfig};
use crate::rng::{derive_seed, stream};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Setup {
    pub kind: MatrixKind,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub amplitude: Amplitude,
    pub noise: NoiseModel,
    pub normalize: bool,
}

pub(crate) struct Planted {
    pub a: MeasurementMatrix,
    pub x: SparseSignal,
    pub y: Measurements,
}

/// Draws the instance for `seed`. Matrix, signal and noise use independent
/// sub-streams, so the instance does not depend on the solver.
pub(crate) fn plant(s: &Setup, seed: u64) -> Result<Planted> {
    let a = build_matrix(s.kind, s.m, s.n, derive_seed(seed, &[stream::MATRIX]), s.normalize)?;
    let x = generate_sparse_signal(s.n, s.k, s.amplitude, derive_seed(seed, &[stream::SIGNAL]))?;
    let y = measure(&a, x.values(), s.noise, derive_seed(seed, &[stream::NOISE]))?;
    Ok(Planted { a, x, y })
}

pub(crate) fn solve(p: &Planted, s: &Setup, solver: &SolverConfig) -> Result<RecoveryResult> {
    let spec = solver.spec_for(s.k, s.m, s.noise.sigma());
    recover(&p.a, &p.y, &spec)
}
