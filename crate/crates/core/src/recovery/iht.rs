use std::time::Instant;

use super::{check_inputs, finish, RecoveryResult, RecoverySpec, SolverKind, StepMode};
use crate::error::Result;
use crate::linalg;
use crate::model::{MeasurementMatrix, Measurements};

// step-shrinking safeguard constants
const SHRINK_KAPPA: f64 = 2.0;
const SHRINK_C: f64 = 0.01;
const MAX_SHRINKS: usize = 60;

/// Keeps the `k` largest-magnitude entries of `v` (lowest index wins ties)
/// and zeroes the rest.
pub fn hard_threshold(v: &[f64], k: usize) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| v[j].abs().total_cmp(&v[i].abs()).then(i.cmp(&j)));
    let mut out = vec![0.0; v.len()];
    for &i in order.iter().take(k) {
        out[i] = v[i];
    }
    out
}

fn same_support(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(p, q)| (*p != 0.0) == (*q != 0.0))
}

fn sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Iterative hard thresholding `x ← H_k(x + μ·Aᵀ(y − A·x))` from `x = 0`.
///
/// With [`StepMode::Normalized`], `μ = ‖g_S‖² / ‖A g_S‖²` where `g_S` is the
/// gradient restricted to the current support (the full gradient while the
/// iterate is zero). When the proposed support differs from the current one
/// the step is shrunk until `μ ≤ (1 − c)‖Δx‖² / ‖A Δx‖²`. A zero restricted
/// gradient falls back to `μ = 1`; a zero denominator ends the run
/// unconverged. Stops once the iterate moves by at most `residual_tol` or
/// the residual drops to `residual_tol`.
pub fn iht(a: &MeasurementMatrix, y: &Measurements, spec: &RecoverySpec) -> Result<RecoveryResult> {
    check_inputs(a, y, spec, SolverKind::Iht)?;
    let start = Instant::now();
    let entries = a.entries();
    let n = a.n();
    let k = spec.target_sparsity.expect("validated").min(n);
    let tol = spec.residual_tol;

    let mut x = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;

    if linalg::norm2(&y.y) <= tol {
        return Ok(finish(a, y, SolverKind::Iht, x, 0, true, start));
    }

    for it in 1..=spec.max_iterations {
        let ax = linalg::mat_vec(entries, &x);
        let r: Vec<f64> = y.y.iter().zip(&ax).map(|(p, q)| p - q).collect();
        let g = linalg::mat_t_vec(entries, &r);
        let empty = x.iter().all(|v| *v == 0.0);
        let g_s: Vec<f64> = if empty {
            g.clone()
        } else {
            g.iter().zip(&x).map(|(gi, xi)| if *xi != 0.0 { *gi } else { 0.0 }).collect()
        };

        let mut mu = match spec.step {
            StepMode::Fixed => 1.0,
            StepMode::Normalized => {
                let num = sq(&g_s);
                if num == 0.0 {
                    1.0
                } else {
                    let den = sq(&linalg::mat_vec(entries, &g_s));
                    if den == 0.0 {
                        iterations = it - 1;
                        break;
                    }
                    num / den
                }
            }
        };

        let step = |mu: f64| -> Vec<f64> {
            let v: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi + mu * gi).collect();
            hard_threshold(&v, k)
        };
        let mut next = step(mu);
        if spec.step == StepMode::Normalized && !empty {
            for _ in 0..MAX_SHRINKS {
                if same_support(&next, &x) {
                    break;
                }
                let dx: Vec<f64> = next.iter().zip(&x).map(|(p, q)| p - q).collect();
                let a_dx = sq(&linalg::mat_vec(entries, &dx));
                if a_dx == 0.0 {
                    break;
                }
                let omega = (1.0 - SHRINK_C) * sq(&dx) / a_dx;
                if mu <= omega {
                    break;
                }
                mu /= SHRINK_KAPPA * (1.0 - SHRINK_C);
                next = step(mu);
            }
        }

        let change = next
            .iter()
            .zip(&x)
            .map(|(p, q)| (p - q) * (p - q))
            .sum::<f64>()
            .sqrt();
        x = next;
        iterations = it;
        if change <= tol || linalg::residual_norm(entries, &y.y, &x) <= tol {
            converged = true;
            break;
        }
    }

    Ok(finish(a, y, SolverKind::Iht, x, iterations, converged, start))
}
