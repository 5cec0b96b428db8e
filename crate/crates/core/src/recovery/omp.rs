use std::time::Instant;

use super::{check_inputs, finish, support_lstsq, RecoveryResult, RecoverySpec, SolverKind};
use crate::error::Result;
use crate::linalg;
use crate::model::{MeasurementMatrix, Measurements};

/// Orthogonal matching pursuit.
///
/// Each iteration adds the column with the largest normalized correlation
/// `|⟨a_j, r⟩| / ‖a_j‖` to the residual (lowest index wins ties), refits by
/// least squares on the support and updates the residual. Stops when the
/// residual reaches `residual_tol`, the support reaches `target_sparsity`,
/// or `max_iterations` is hit. A rank-deficient refit is solved in the
/// minimum-norm sense and reported as not converged.
pub fn omp(a: &MeasurementMatrix, y: &Measurements, spec: &RecoverySpec) -> Result<RecoveryResult> {
    check_inputs(a, y, spec, SolverKind::Omp)?;
    let start = Instant::now();
    let entries = a.entries();
    let (m, n) = (a.m(), a.n());
    let target = spec.target_sparsity.unwrap_or(m).min(n);
    let norms: Vec<f64> = entries.column_iter().map(|c| c.norm()).collect();

    let mut support: Vec<usize> = Vec::new();
    let mut in_support = vec![false; n];
    let mut x = vec![0.0; n];
    let mut residual = y.y.clone();
    let mut deficient = false;
    let mut converged = false;
    let mut iterations = 0;

    loop {
        if linalg::norm2(&residual) <= spec.residual_tol || support.len() >= target {
            converged = true;
            break;
        }
        if iterations >= spec.max_iterations {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for j in (0..n).filter(|&j| !in_support[j] && norms[j] > 0.0) {
            let c = linalg::dot(entries.column(j).as_slice(), &residual).abs() / norms[j];
            if best.is_none_or(|(_, b)| c > b) {
                best = Some((j, c));
            }
        }
        let Some((j, c)) = best else { break };
        if c == 0.0 {
            // residual is orthogonal to every remaining column
            break;
        }
        support.push(j);
        in_support[j] = true;
        iterations += 1;
        let (fit, rank_deficient) = support_lstsq(a, &y.y, &support);
        deficient |= rank_deficient;
        x = fit;
        let ax = linalg::mat_vec(entries, &x);
        residual = y.y.iter().zip(&ax).map(|(p, q)| p - q).collect();
    }

    Ok(finish(a, y, SolverKind::Omp, x, iterations, converged && !deficient, start))
}
