//! Small dense linear-algebra helpers shared by the certifiers and solvers.

use nalgebra::{DMatrix, DVector};

/// Relative threshold below which a singular value is treated as zero.
pub const RANK_TOL: f64 = 1e-10;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn norm1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// `A·x` for a dense slice.
pub fn mat_vec(a: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.ncols(), x.len());
    let mut out = vec![0.0; a.nrows()];
    for (j, &xj) in x.iter().enumerate() {
        if xj == 0.0 {
            continue;
        }
        for (o, aij) in out.iter_mut().zip(a.column(j).iter()) {
            *o += aij * xj;
        }
    }
    out
}

/// `Aᵀ·r`.
pub fn mat_t_vec(a: &DMatrix<f64>, r: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.nrows(), r.len());
    (0..a.ncols())
        .map(|j| dot(a.column(j).as_slice(), r))
        .collect()
}

/// `‖y − A·x‖₂`.
pub fn residual_norm(a: &DMatrix<f64>, y: &[f64], x: &[f64]) -> f64 {
    let ax = mat_vec(a, x);
    ax.iter()
        .zip(y)
        .map(|(p, q)| (q - p) * (q - p))
        .sum::<f64>()
        .sqrt()
}

/// Largest singular value, or 0 for an empty matrix.
pub fn spectral_norm(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().max()
}

/// Numerical rank with singular values below `tol` counted as zero.
pub fn rank_with_tol(a: &DMatrix<f64>, tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    a.singular_values().iter().filter(|&&s| s > tol).count()
}

/// Minimum-norm least-squares solution of `A·c ≈ b`.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    pub coef: Vec<f64>,
    pub rank_deficient: bool,
}

/// Uses Householder QR (with one refinement step) for full-column-rank tall
/// systems and falls back to the SVD pseudo-inverse when `R` has a diagonal
/// entry below `RANK_TOL · max|R_ii|` or the system is wide.
pub fn lstsq(a: &DMatrix<f64>, b: &[f64]) -> LeastSquares {
    let cols = a.ncols();
    if cols == 0 {
        return LeastSquares {
            coef: Vec::new(),
            rank_deficient: false,
        };
    }
    let rhs = DVector::from_column_slice(b);
    if cols <= a.nrows() {
        let qr = a.clone().qr();
        let r = qr.r();
        let dmax = r.diagonal().iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
        let full_rank = dmax > 0.0 && r.diagonal().iter().all(|d| d.abs() > RANK_TOL * dmax);
        if full_rank {
            let q_t = qr.q().transpose();
            let solve = |v: &DVector<f64>| r.solve_upper_triangular(&(&q_t * v));
            if let Some(mut coef) = solve(&rhs) {
                // one step of iterative refinement
                if let Some(delta) = solve(&(&rhs - a * &coef)) {
                    coef += delta;
                }
                return LeastSquares {
                    coef: coef.as_slice().to_vec(),
                    rank_deficient: false,
                };
            }
        }
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| smax > 0.0 && s > RANK_TOL * smax)
        .count();
    let rank_deficient = rank < cols;
    if smax == 0.0 {
        return LeastSquares {
            coef: vec![0.0; cols],
            rank_deficient,
        };
    }
    let coef = svd
        .solve(&rhs, RANK_TOL * smax)
        .expect("u and v were computed");
    LeastSquares {
        coef: coef.as_slice().to_vec(),
        rank_deficient,
    }
}

/// Extreme eigenvalues `(λ_min, λ_max)` of `A_Sᵀ A_S`.
pub fn gram_extremes(a_s: &DMatrix<f64>) -> (f64, f64) {
    let gram = a_s.transpose() * a_s;
    let eig = gram.symmetric_eigen();
    (eig.eigenvalues.min(), eig.eigenvalues.max())
}

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
