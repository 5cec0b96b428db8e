//! Compressive-sensing evaluation toolkit.
//!
//! Builds measurement matrices from the common random and structured
//! ensembles, plants sparse signals, recovers them with greedy, thresholding
//! and l1 solvers, certifies matrices (coherence, Welch bound, spark, null
//! space order, restricted isometry constants) and scores every trial with
//! the standard catalog of efficiency metrics. Monte-Carlo campaigns and
//! phase transition diagrams sit on top.

pub mod campaign;
pub mod certify;
pub mod error;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod model;
pub mod phase;
pub mod recovery;
pub mod rng;
mod trial;

pub use campaign::{parse_config, run_campaign, write_outputs, CampaignConfig, CampaignResult, TrialRecord};
pub use certify::{certify, CertificationReport, CertifyOptions, RipEstimate, RipMethod, SparkResult};
pub use error::{Error, Result};
pub use metrics::{metric_registry, MetricReport, MetricValue};
pub use model::{
    build_matrix, generate_sparse_signal, measure, sparsity_level, Amplitude, MatrixKind,
    MeasurementMatrix, Measurements, NoiseModel, SparseSignal,
};
pub use phase::{cell_params, run_phase_diagram, PhaseConfig, PhaseGrid};
pub use recovery::{recover, RecoveryResult, RecoverySpec, SolverConfig, SolverKind};
