use std::time::Instant;

use itertools::Itertools;

use super::{check_dims, finish, support_lstsq, RecoveryResult, SolverKind};
use crate::certify::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::linalg::{self, binomial};
use crate::model::{MeasurementMatrix, Measurements};

/// Ground truth for small instances: least squares on every support of
/// size `k`, keeping the smallest residual.
///
/// Residuals within `1e-12 · max(1, ‖y‖)` of each other count as ties and
/// resolve to the lexicographically smallest support. `iterations` reports
/// the number of supports examined.
pub fn exhaustive_oracle(a: &MeasurementMatrix, y: &Measurements, k: usize) -> Result<RecoveryResult> {
    oracle_with_budget(a, y, k, DEFAULT_BUDGET)
}

pub(super) fn oracle_with_budget(
    a: &MeasurementMatrix,
    y: &Measurements,
    k: usize,
    budget: u128,
) -> Result<RecoveryResult> {
    check_dims(a, y)?;
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("oracle sparsity must lie in 1..={n}, got {k}")));
    }
    let required = binomial(n, k);
    if required > budget {
        return Err(Error::BudgetExceeded {
            what: "exhaustive oracle supports",
            required,
            budget,
        });
    }
    let start = Instant::now();
    let tie = 1e-12 * linalg::norm2(&y.y).max(1.0);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut examined = 0;
    for support in (0..n).combinations(k) {
        examined += 1;
        let (x, _) = support_lstsq(a, &y.y, &support);
        let r = linalg::residual_norm(a.entries(), &y.y, &x);
        if best.as_ref().is_none_or(|(b, _)| r < b - tie) {
            best = Some((r, x));
        }
    }
    let (_, x) = best.expect("at least one support");
    Ok(finish(a, y, SolverKind::ExhaustiveOracle, x, examined, true, start))
}
