use std::time::Instant;

use nalgebra::{DMatrix, DVector};

use super::{check_inputs, finish, support_lstsq, RecoveryResult, RecoverySpec, SolverKind};
use crate::error::Result;
use crate::linalg::{self, RANK_TOL};
use crate::model::{MeasurementMatrix, Measurements};

fn soft_threshold(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// Basis pursuit: `min ‖x‖₁` subject to `A·x = y`, or to
/// `‖A·x − y‖₂ ≤ residual_tol` when `residual_tol > 0`.
///
/// Solved with ADMM at a fixed penalty `ρ` and no over-relaxation. In the
/// equality form the x-update is the affine projection
/// `v − A⁺(A·v − y)`; the final iterate is polished by a least-squares refit
/// on the support of the l1 copy when that keeps it feasible without
/// increasing the l1 norm. The ball form splits `w = A·x` and returns the
/// sparse l1 copy.
pub fn basis_pursuit(a: &MeasurementMatrix, y: &Measurements, spec: &RecoverySpec) -> Result<RecoveryResult> {
    check_inputs(a, y, spec, SolverKind::BasisPursuit)?;
    let start = Instant::now();
    let (x, iterations, converged) = if spec.residual_tol > 0.0 {
        admm_ball(a, &y.y, spec)
    } else {
        admm_equality(a, &y.y, spec)
    };
    Ok(finish(a, y, SolverKind::BasisPursuit, x, iterations, converged, start))
}

fn admm_equality(a: &MeasurementMatrix, y: &[f64], spec: &RecoverySpec) -> (Vec<f64>, usize, bool) {
    let entries = a.entries();
    let n = a.n();
    let p = spec.bp;
    let rho = p.penalty;
    let smax = linalg::spectral_norm(entries);
    let pinv: DMatrix<f64> = if smax == 0.0 {
        DMatrix::zeros(n, a.m())
    } else {
        entries
            .clone()
            .pseudo_inverse(RANK_TOL * smax)
            .expect("tolerance is non-negative")
    };
    let y_vec = DVector::from_column_slice(y);
    let project = |v: &[f64]| -> Vec<f64> {
        let vv = DVector::from_column_slice(v);
        let corr = &pinv * (entries * &vv - &y_vec);
        (vv - corr).as_slice().to_vec()
    };

    let mut x = Vec::new();
    let mut z = vec![0.0; n];
    let mut u = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    for it in 1..=spec.max_iterations {
        let v: Vec<f64> = z.iter().zip(&u).map(|(zi, ui)| zi - ui).collect();
        x = project(&v);
        let z_old = std::mem::take(&mut z);
        z = x.iter().zip(&u).map(|(xi, ui)| soft_threshold(xi + ui, 1.0 / rho)).collect();
        for ((ui, xi), zi) in u.iter_mut().zip(&x).zip(&z) {
            *ui += xi - zi;
        }
        iterations = it;
        let r_pri = dist(&x, &z);
        let r_dual = rho * dist(&z, &z_old);
        let eps_pri = p.feasibility_tol * linalg::norm2(&x).max(linalg::norm2(&z));
        let eps_dual = p.optimality_tol * rho * linalg::norm2(&u);
        if r_pri <= eps_pri && r_dual <= eps_dual {
            converged = true;
            break;
        }
    }

    let y_norm = linalg::norm2(y);
    let feasible = |v: &[f64]| linalg::residual_norm(entries, y, v) <= p.feasibility_tol * y_norm;

    let support: Vec<usize> = (0..n).filter(|&i| z[i] != 0.0).collect();
    if !support.is_empty() && support.len() <= a.m() {
        let (polished, deficient) = support_lstsq(a, y, &support);
        if !deficient && feasible(&polished) && linalg::norm1(&polished) <= linalg::norm1(&x) + p.optimality_tol {
            return (polished, iterations, converged);
        }
    }
    let ok = converged && feasible(&x);
    (x, iterations, ok)
}

fn admm_ball(a: &MeasurementMatrix, y: &[f64], spec: &RecoverySpec) -> (Vec<f64>, usize, bool) {
    let entries = a.entries();
    let (m, n) = (a.m(), a.n());
    let p = spec.bp;
    let rho = p.penalty;
    let eps = spec.residual_tol;
    let system = DMatrix::<f64>::identity(n, n) + entries.transpose() * entries;
    let chol = system.cholesky().expect("I + AᵀA is positive definite");

    let mut z = DVector::<f64>::zeros(n);
    let mut u = DVector::<f64>::zeros(n);
    let mut w = DVector::from_column_slice(y);
    let mut v = DVector::<f64>::zeros(m);
    let y_vec = DVector::from_column_slice(y);
    let mut iterations = 0;
    let mut converged = false;
    for it in 1..=spec.max_iterations {
        let rhs = (&z - &u) + entries.transpose() * (&w - &v);
        let x = chol.solve(&rhs);
        let z_old = z.clone();
        z = (&x + &u).map(|t| soft_threshold(t, 1.0 / rho));
        let ax = entries * &x;
        let w_old = w.clone();
        // project A·x + v onto the ball of radius eps around y
        let offset = &ax + &v - &y_vec;
        let on = offset.norm();
        w = if on <= eps { &y_vec + &offset } else { &y_vec + offset * (eps / on) };
        u += &x - &z;
        v += &ax - &w;
        iterations = it;
        let r_pri = ((&x - &z).norm_squared() + (&ax - &w).norm_squared()).sqrt();
        let r_dual = rho * ((&z - &z_old).norm_squared() + (entries.transpose() * (&w - &w_old)).norm_squared()).sqrt();
        let eps_pri = p.feasibility_tol * x.norm().max(z.norm()).max(w.norm());
        let eps_dual = p.optimality_tol * rho * (u.norm_squared() + v.norm_squared()).sqrt();
        if r_pri <= eps_pri && r_dual <= eps_dual {
            converged = true;
            break;
        }
    }
    (z.as_slice().to_vec(), iterations, converged)
}
