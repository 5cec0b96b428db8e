//! Sparse recovery for the underdetermined system `y = A·x`.
//!
//! Three solver families are provided: orthogonal matching pursuit (greedy),
//! normalized iterative hard thresholding, and basis pursuit (l1
//! minimization solved by ADMM). An exhaustive least-squares search over all
//! supports serves as ground truth on small instances.

mod basis_pursuit;
mod iht;
mod omp;
mod oracle;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{MeasurementMatrix, Measurements};

pub use basis_pursuit::basis_pursuit;
pub use iht::{hard_threshold, iht};
pub use omp::omp;
pub use oracle::exhaustive_oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Omp,
    Iht,
    #[serde(alias = "bp")]
    BasisPursuit,
    #[serde(alias = "oracle")]
    ExhaustiveOracle,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] = [
        SolverKind::Omp,
        SolverKind::Iht,
        SolverKind::BasisPursuit,
        SolverKind::ExhaustiveOracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Omp => "omp",
            SolverKind::Iht => "iht",
            SolverKind::BasisPursuit => "basis_pursuit",
            SolverKind::ExhaustiveOracle => "exhaustive_oracle",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "omp" => SolverKind::Omp,
            "iht" | "niht" => SolverKind::Iht,
            "bp" | "basis_pursuit" => SolverKind::BasisPursuit,
            "oracle" | "exhaustive_oracle" => SolverKind::ExhaustiveOracle,
            other => return Err(Error::invalid(format!("unknown solver `{other}`"))),
        })
    }
}

/// Step-size rule for iterative hard thresholding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    /// Constant step `μ = 1`.
    Fixed,
    /// `μ = ‖g_S‖² / ‖A g_S‖²` with the gradient restricted to the current
    /// support, plus the step-shrinking safeguard when the support changes.
    #[default]
    Normalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BasisPursuitParams {
    /// Relative primal residual target, also the accepted `‖A·x − y‖ / ‖y‖`.
    pub feasibility_tol: f64,
    /// Relative dual residual target, also the accepted l1 slack.
    pub optimality_tol: f64,
    /// ADMM penalty parameter `ρ`.
    pub penalty: f64,
}

impl Default for BasisPursuitParams {
    fn default() -> Self {
        BasisPursuitParams {
            feasibility_tol: 1e-6,
            optimality_tol: 1e-6,
            penalty: 1.0,
        }
    }
}

/// Solver selection and stopping rules.
///
/// `residual_tol` is a stopping threshold on `‖y − A·x‖₂` for OMP, a
/// threshold on the iterate change (and residual) for IHT, and the radius of
/// the data-fidelity ball for basis pursuit (`0` means exact equality).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoverySpec {
    pub solver: SolverKind,
    pub target_sparsity: Option<usize>,
    pub residual_tol: f64,
    pub max_iterations: usize,
    pub step: StepMode,
    pub bp: BasisPursuitParams,
    /// Support budget for the exhaustive oracle.
    pub oracle_budget: u128,
}

impl RecoverySpec {
    /// Defaults per solver: OMP and IHT stop at `1e-10`, basis pursuit
    /// enforces `A·x = y`; 1000 iterations for IHT, 5000 for basis pursuit.
    pub fn new(solver: SolverKind) -> Self {
        let (residual_tol, max_iterations) = match solver {
            SolverKind::Omp => (1e-10, 1000),
            SolverKind::Iht => (1e-10, 1000),
            SolverKind::BasisPursuit => (0.0, 5000),
            SolverKind::ExhaustiveOracle => (0.0, 1),
        };
        RecoverySpec {
            solver,
            target_sparsity: None,
            residual_tol,
            max_iterations,
            step: StepMode::default(),
            bp: BasisPursuitParams::default(),
            oracle_budget: crate::certify::DEFAULT_BUDGET,
        }
    }

    pub fn with_target(mut self, k: usize) -> Self {
        self.target_sparsity = Some(k);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::invalid("max_iterations must be at least 1"));
        }
        if !(self.residual_tol >= 0.0 && self.residual_tol.is_finite()) {
            return Err(Error::invalid("residual_tol must be finite and non-negative"));
        }
        if self.target_sparsity == Some(0) {
            return Err(Error::invalid("target_sparsity must be positive"));
        }
        match self.solver {
            SolverKind::Omp if self.target_sparsity.is_none() && self.residual_tol == 0.0 => Err(
                Error::invalid("OMP needs target_sparsity or a positive residual_tol"),
            ),
            SolverKind::Iht | SolverKind::ExhaustiveOracle if self.target_sparsity.is_none() => {
                Err(Error::invalid(format!("{} needs target_sparsity", self.solver)))
            }
            SolverKind::BasisPursuit => {
                let p = &self.bp;
                if !(p.penalty > 0.0 && p.feasibility_tol > 0.0 && p.optimality_tol > 0.0) {
                    Err(Error::invalid("basis pursuit tolerances and penalty must be positive"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// Solver entry of a config file: a bare name such as `"omp"`, or an object
/// `{"kind": "iht", "max_iterations": 500}` overriding individual defaults.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    pub kind: SolverKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<StepMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bp: Option<BasisPursuitParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_budget: Option<u128>,
}

impl From<SolverKind> for SolverConfig {
    fn from(kind: SolverKind) -> Self {
        SolverConfig {
            kind,
            residual_tol: None,
            max_iterations: None,
            step: None,
            bp: None,
            oracle_budget: None,
        }
    }
}

impl SolverConfig {
    /// Concrete spec for a `k`-sparse instance with `m` measurements and
    /// noise level `sigma`.
    ///
    /// Every solver is told the true sparsity (at least 1). Without an
    /// explicit `residual_tol`, noisy basis pursuit uses the ball radius
    /// `σ·√(m + 2√(2m))`.
    pub fn spec_for(&self, k: usize, m: usize, sigma: f64) -> RecoverySpec {
        let mut spec = RecoverySpec::new(self.kind).with_target(k.max(1));
        if self.kind == SolverKind::BasisPursuit && sigma > 0.0 {
            let m = m as f64;
            spec.residual_tol = sigma * (m + 2.0 * (2.0 * m).sqrt()).sqrt();
        }
        if let Some(t) = self.residual_tol {
            spec.residual_tol = t;
        }
        if let Some(i) = self.max_iterations {
            spec.max_iterations = i;
        }
        if let Some(step) = self.step {
            spec.step = step;
        }
        if let Some(bp) = self.bp {
            spec.bp = bp;
        }
        if let Some(b) = self.oracle_budget {
            spec.oracle_budget = b;
        }
        spec
    }
}

impl<'de> Deserialize<'de> for SolverConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Full {
            kind: String,
            #[serde(default)]
            residual_tol: Option<f64>,
            #[serde(default)]
            max_iterations: Option<usize>,
            #[serde(default)]
            step: Option<StepMode>,
            #[serde(default)]
            bp: Option<BasisPursuitParams>,
            #[serde(default)]
            oracle_budget: Option<u128>,
        }

        struct Visitor;

        impl<'de> serde::de::Visitor<'de> for Visitor {
            type Value = SolverConfig;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a solver name or a solver object")
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<SolverConfig, E> {
                v.parse::<SolverKind>().map(SolverConfig::from).map_err(E::custom)
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(self, map: A) -> std::result::Result<SolverConfig, A::Error> {
                use serde::de::Error as _;
                let f = Full::deserialize(serde::de::value::MapAccessDeserializer::new(map))?;
                Ok(SolverConfig {
                    kind: f.kind.parse().map_err(A::Error::custom)?,
                    residual_tol: f.residual_tol,
                    max_iterations: f.max_iterations,
                    step: f.step,
                    bp: f.bp,
                    oracle_budget: f.oracle_budget,
                })
            }
        }

        d.deserialize_any(Visitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryResult {
    pub solver: SolverKind,
    pub x_hat: Vec<f64>,
    pub iterations: usize,
    /// `‖y − A·x_hat‖₂`.
    pub residual_norm: f64,
    #[serde(rename = "recovery_time_s")]
    pub recovery_time: f64,
    pub converged: bool,
}

/// Runs the solver named in `spec`.
pub fn recover(a: &MeasurementMatrix, y: &Measurements, spec: &RecoverySpec) -> Result<RecoveryResult> {
    match spec.solver {
        SolverKind::Omp => omp(a, y, spec),
        SolverKind::Iht => iht(a, y, spec),
        SolverKind::BasisPursuit => basis_pursuit(a, y, spec),
        SolverKind::ExhaustiveOracle => {
            let k = spec
                .target_sparsity
                .ok_or_else(|| Error::invalid("exhaustive oracle needs target_sparsity"))?;
            oracle::oracle_with_budget(a, y, k, spec.oracle_budget)
        }
    }
}

fn check_inputs(a: &MeasurementMatrix, y: &Measurements, spec: &RecoverySpec, expected: SolverKind) -> Result<()> {
    if spec.solver != expected {
        return Err(Error::invalid(format!(
            "spec names solver {} but {} was called",
            spec.solver, expected
        )));
    }
    check_dims(a, y)?;
    spec.validate()
}

fn check_dims(a: &MeasurementMatrix, y: &Measurements) -> Result<()> {
    if a.m() != y.len() {
        return Err(Error::invalid(format!(
            "matrix has {} rows but measurements have length {}",
            a.m(),
            y.len()
        )));
    }
    Ok(())
}

/// Fills in the recomputed residual and the elapsed time.
fn finish(
    a: &MeasurementMatrix,
    y: &Measurements,
    solver: SolverKind,
    x_hat: Vec<f64>,
    iterations: usize,
    converged: bool,
    start: Instant,
) -> RecoveryResult {
    let recovery_time = start.elapsed().as_secs_f64();
    RecoveryResult {
        solver,
        residual_norm: linalg::residual_norm(a.entries(), &y.y, &x_hat),
        x_hat,
        iterations,
        recovery_time,
        converged,
    }
}

/// Least squares restricted to `support`, scattered back to length `n`.
fn support_lstsq(a: &MeasurementMatrix, y: &[f64], support: &[usize]) -> (Vec<f64>, bool) {
    let sub = a.entries().select_columns(support.iter());
    let ls = linalg::lstsq(&sub, y);
    let mut x = vec![0.0; a.n()];
    for (&j, c) in support.iter().zip(&ls.coef) {
        x[j] = *c;
    }
    (x, ls.rank_deficient)
}
