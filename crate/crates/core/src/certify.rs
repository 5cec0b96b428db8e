//! Matrix-quality certification: mutual coherence and the Welch bound,
//! spark and null space order, restricted isometry constants, and the
//! measurement-count bound.

use itertools::Itertools;
use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, binomial, RANK_TOL};
use crate::model::MeasurementMatrix;
use crate::rng::{derive_seed, rng_from_seed};

/// Default enumeration budget for exhaustive searches.
pub const DEFAULT_BUDGET: u128 = 1_000_000;
/// Default number of sampled supports for Monte-Carlo RIP estimates.
pub const DEFAULT_MC_TRIALS: usize = 10_000;
/// Default constant in the measurement bound.
pub const DEFAULT_BOUND_CONSTANT: f64 = 2.0;

/// Mutual coherence: the largest absolute inner product between two
/// distinct columns after scaling each to unit l2 norm.
pub fn coherence(a: &MeasurementMatrix) -> Result<f64> {
    let n = a.n();
    if n < 2 {
        return Err(Error::invalid("coherence needs at least two columns"));
    }
    let entries = a.entries();
    let norms: Vec<f64> = entries.column_iter().map(|c| c.norm()).collect();
    if let Some(j) = norms.iter().position(|&v| v == 0.0) {
        return Err(Error::DegenerateMatrix(format!("column {j} is zero")));
    }
    let mut mu: f64 = 0.0;
    for i in 0..n {
        let ci = entries.column(i);
        for j in i + 1..n {
            let c = ci.dot(&entries.column(j)) / (norms[i] * norms[j]);
            mu = mu.max(c.abs());
        }
    }
    Ok(mu.clamp(0.0, 1.0))
}

/// Lower bound `√((n − m) / (m (n − 1)))` on the coherence of any `m × n`
/// matrix with unit columns; attained exactly by equiangular tight frames.
pub fn welch_bound(m: usize, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("welch bound needs n >= 2"));
    }
    if m == 0 || m > n {
        return Err(Error::invalid(format!("welch bound needs 1 <= m <= n, got m = {m}, n = {n}")));
    }
    let (m, n) = (m as f64, n as f64);
    Ok(((n - m) / (m * (n - 1.0))).sqrt())
}

/// Outcome of a spark search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SparkResult {
    /// Size of the smallest linearly dependent column set.
    Exact(usize),
    /// No dependent set of size `<= cap` exists.
    GreaterThan(usize),
}

impl SparkResult {
    /// A certified lower bound on the spark.
    pub fn lower_bound(self) -> usize {
        match self {
            SparkResult::Exact(v) => v,
            SparkResult::GreaterThan(cap) => cap + 1,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            SparkResult::Exact(v) => Some(v),
            SparkResult::GreaterThan(_) => None,
        }
    }
}

/// Smallest number of linearly dependent columns, searched exhaustively up
/// to subsets of size `cap`.
///
/// A subset is dependent when its numerical rank (singular values above
/// `1e-10 · σ_max(A)`) is below its size. Any `m + 1` columns are dependent,
/// so the search never needs to go past `m + 1`.
pub fn spark(a: &MeasurementMatrix, cap: usize) -> Result<SparkResult> {
    spark_with_budget(a, cap, DEFAULT_BUDGET)
}

pub fn spark_with_budget(a: &MeasurementMatrix, cap: usize, budget: u128) -> Result<SparkResult> {
    let (m, n) = (a.m(), a.n());
    if cap == 0 || cap > (m + 1).min(n) {
        return Err(Error::invalid(format!(
            "spark cap must lie in 1..={}, got {cap}",
            (m + 1).min(n)
        )));
    }
    // subsets of size m + 1 are dependent without any rank test
    let required: u128 = (1..=cap.min(m)).map(|s| binomial(n, s)).fold(0u128, u128::saturating_add);
    if required > budget {
        return Err(Error::BudgetExceeded {
            what: "spark subset enumeration",
            required,
            budget,
        });
    }
    let entries = a.entries();
    let smax = linalg::spectral_norm(entries);
    if smax == 0.0 {
        return Ok(SparkResult::Exact(1));
    }
    let tol = RANK_TOL * smax;
    for size in 1..=cap {
        if size > m {
            return Ok(SparkResult::Exact(size));
        }
        let dependent = (0..n).combinations(size).any(|cols| {
            let sub = entries.select_columns(cols.iter());
            linalg::rank_with_tol(&sub, tol) < size
        });
        if dependent {
            return Ok(SparkResult::Exact(size));
        }
    }
    Ok(SparkResult::GreaterThan(cap))
}

/// Largest `k` with `2k < spark(A)`: every `k`-sparse signal is uniquely
/// determined by its measurements.
pub fn nsp_order(a: &MeasurementMatrix, cap: usize) -> Result<usize> {
    Ok(nsp_order_from_spark(spark(a, cap)?))
}

/// Null space order implied by a spark result; a truncated search counts
/// as `spark >= cap + 1`.
pub fn nsp_order_from_spark(spark: SparkResult) -> usize {
    (spark.lower_bound() - 1) / 2
}

/// How a restricted isometry constant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RipMethod {
    Exhaustive,
    /// Maximum over `trials` supports sampled from `seed`.
    MonteCarlo { trials: usize, seed: u64 },
}

/// Restricted isometry constant of order `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RipEstimate {
    pub k: usize,
    pub delta: f64,
    pub method: RipMethod,
    /// False for sampled estimates, which are lower bounds on the true constant.
    #[serde(rename = "exact")]
    pub is_exact: bool,
}

fn support_defect(a: &MeasurementMatrix, support: &[usize]) -> f64 {
    let sub = a.entries().select_columns(support.iter());
    let (lo, hi) = linalg::gram_extremes(&sub);
    (hi - 1.0).max(1.0 - lo).max(0.0)
}

/// `δ_k = max_S max(σ_max(A_S)² − 1, 1 − σ_min(A_S)²)` over supports of
/// size `k`, all of them (exhaustive) or a seeded sample.
pub fn rip_constant(a: &MeasurementMatrix, k: usize, method: RipMethod) -> Result<RipEstimate> {
    rip_constant_with_budget(a, k, method, DEFAULT_BUDGET)
}

pub fn rip_constant_with_budget(
    a: &MeasurementMatrix,
    k: usize,
    method: RipMethod,
    budget: u128,
) -> Result<RipEstimate> {
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("RIP order must lie in 1..={n}, got {k}")));
    }
    let delta = match method {
        RipMethod::Exhaustive => {
            let required = binomial(n, k);
            if required > budget {
                return Err(Error::BudgetExceeded {
                    what: "exhaustive RIP supports",
                    required,
                    budget,
                });
            }
            (0..n)
                .combinations(k)
                .map(|s| support_defect(a, &s))
                .fold(0.0, f64::max)
        }
        RipMethod::MonteCarlo { trials, seed } => {
            if trials == 0 {
                return Err(Error::invalid("Monte-Carlo RIP needs at least one trial"));
            }
            (0..trials as u64)
                .map(|t| {
                    let mut rng = rng_from_seed(derive_seed(seed, &[t]));
                    let mut s = index::sample(&mut rng, n, k).into_vec();
                    s.sort_unstable();
                    support_defect(a, &s)
                })
                .fold(0.0, f64::max)
        }
    };
    Ok(RipEstimate {
        k,
        delta,
        method,
        is_exact: matches!(method, RipMethod::Exhaustive),
    })
}

/// Exhaustive when `C(n, k)` fits the budget, Monte-Carlo otherwise.
pub fn rip_constant_auto(a: &MeasurementMatrix, k: usize, mc_trials: usize, seed: u64) -> Result<RipEstimate> {
    let method = if binomial(a.n(), k) <= DEFAULT_BUDGET {
        RipMethod::Exhaustive
    } else {
        RipMethod::MonteCarlo { trials: mc_trials, seed }
    };
    rip_constant(a, k, method)
}

/// Null space constant implied by a restricted isometry constant of order
/// `2k`: `C = 2δ / (1 − (1 + √2)δ)`, valid for `0 < δ < √2 − 1`.
pub fn rip_to_nsp_constant(delta2k: f64) -> Result<f64> {
    let limit = std::f64::consts::SQRT_2 - 1.0;
    if !(delta2k > 0.0 && delta2k < limit) {
        return Err(Error::invalid(format!(
            "delta_2k must lie in (0, sqrt(2) - 1), got {delta2k}"
        )));
    }
    Ok(2.0 * delta2k / (1.0 - (1.0 + std::f64::consts::SQRT_2) * delta2k))
}

/// Measurements needed for an order-`2s` restricted isometry:
/// `min(n, max(⌈c · s · ln(n / s)⌉, 2s))`.
pub fn measurement_bound(n: usize, s: usize, c: f64) -> Result<usize> {
    if s == 0 || s > n {
        return Err(Error::invalid(format!("sparsity must lie in 1..={n}, got {s}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::invalid(format!("bound constant must be positive, got {c}")));
    }
    let raw = (c * s as f64 * (n as f64 / s as f64).ln()).ceil() as usize;
    Ok(n.min(raw.max(2 * s)))
}

/// Options for [`certify`].
#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Spark search cap; `None` uses `min(m + 1, n)`.
    pub spark_cap: Option<usize>,
    /// RIP orders to evaluate.
    pub rip_orders: Vec<usize>,
    pub mc_trials: usize,
    pub seed: u64,
    /// Sparsity used for `min_measurements`.
    pub sparsity: usize,
    pub bound_constant: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            spark_cap: None,
            rip_orders: vec![1, 2],
            mc_trials: DEFAULT_MC_TRIALS,
            seed: 0,
            sparsity: 1,
            bound_constant: DEFAULT_BOUND_CONSTANT,
        }
    }
}

/// Aggregated certificate for one matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub coherence: f64,
    pub welch_bound: f64,
    pub spark: SparkResult,
    pub nsp_order: usize,
    pub rip: Vec<RipEstimate>,
    pub min_measurements: usize,
}

pub fn certify(a: &MeasurementMatrix, opts: &CertifyOptions) -> Result<CertificationReport> {
    let cap = opts.spark_cap.unwrap_or((a.m() + 1).min(a.n()));
    let spark = spark(a, cap)?;
    let rip = opts
        .rip_orders
        .iter()
        .filter(|&&k| k >= 1 && k <= a.n())
        .map(|&k| rip_constant_auto(a, k, opts.mc_trials, opts.seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(CertificationReport {
        coherence: coherence(a)?,
        welch_bound: welch_bound(a.m(), a.n())?,
        spark,
        nsp_order: nsp_order_from_spark(spark),
        rip,
        min_measurements: measurement_bound(a.n(), opts.sparsity.clamp(1, a.n()), opts.bound_constant)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_matrix, MatrixKind};
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn custom(rows: usize, cols: usize, data: &[f64]) -> MeasurementMatrix {
        MeasurementMatrix::custom(DMatrix::from_row_slice(rows, cols, data), false).unwrap()
    }

    fn identity(n: usize) -> MeasurementMatrix {
        build_matrix(MatrixKind::Identity, n, n, 0, true).unwrap()
    }

    /// Independent rank oracle: Gaussian elimination with partial pivoting.
    fn rank_by_elimination(mut rows: Vec<Vec<f64>>, tol: f64) -> usize {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..ncols {
            let pivot = (rank..rows.len()).max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            if rows[p][col].abs() <= tol {
                continue;
            }
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank {
                    let f = rows[r][col] / rows[rank][col];
                    let pivot_row = rows[rank].clone();
                    for (v, p) in rows[r][col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                        *v -= f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn spark_oracle(a: &MeasurementMatrix, cap: usize) -> Option<usize> {
        let e = a.entries();
        for size in 1..=cap {
            for cols in (0..a.n()).combinations(size) {
                let rows: Vec<Vec<f64>> = (0..a.m()).map(|i| cols.iter().map(|&j| e[(i, j)]).collect()).collect();
                if rank_by_elimination(rows, 1e-9) < size {
                    return Some(size);
                }
            }
        }
        None
    }

    #[test]
    fn coherence_examples() {
        assert_eq!(coherence(&identity(4)).unwrap(), 0.0);
        let dup = custom(2, 3, &[1.0, 2.0, 1.0, 3.0, -1.0, 3.0]);
        assert!((coherence(&dup).unwrap() - 1.0).abs() < 1e-12);
        let h = 1.0 / 2f64.sqrt();
        let two = custom(2, 2, &[1.0, h, 0.0, h]);
        assert!((coherence(&two).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn coherence_errors() {
        let zero = custom(2, 2, &[1.0, 0.0, 1.0, 0.0]);
        assert!(matches!(coherence(&zero), Err(Error::DegenerateMatrix(_))));
        let single = custom(2, 1, &[1.0, 1.0]);
        assert!(matches!(coherence(&single), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn welch_examples() {
        assert_eq!(welch_bound(8, 8).unwrap(), 0.0);
        assert!((welch_bound(1, 2).unwrap() - 1.0).abs() < 1e-15);
        assert!((welch_bound(4, 8).unwrap() - 0.3779644730).abs() < 1e-10);
        assert!(welch_bound(1, 1).is_err());
    }

    #[test]
    fn welch_bound_attained_by_simplex_frame() {
        // three unit vectors at 120 degrees in the plane form an ETF
        let s = 3f64.sqrt() / 2.0;
        let a = custom(2, 3, &[1.0, -0.5, -0.5, 0.0, s, -s]);
        assert!((coherence(&a).unwrap() - welch_bound(2, 3).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn spark_examples() {
        let zero_col = custom(2, 3, &[1.0, 0.0, 2.0, 3.0, 0.0, 1.0]);
        assert_eq!(spark(&zero_col, 3).unwrap(), SparkResult::Exact(1));
        let prop = custom(3, 3, &[1.0, 2.0, 0.0, 2.0, 4.0, 1.0, 3.0, 6.0, 5.0]);
        assert_eq!(spark(&prop, 3).unwrap(), SparkResult::Exact(2));
        let g = build_matrix(MatrixKind::Gaussian, 4, 8, 17, true).unwrap();
        assert_eq!(spark(&g, 5).unwrap(), SparkResult::Exact(5));
        assert_eq!(spark_oracle(&g, 5), Some(5));
        assert_eq!(spark(&identity(4), 4).unwrap(), SparkResult::GreaterThan(4));
        assert!(spark(&g, 6).is_err());
    }

    #[test]
    fn nsp_examples() {
        let zero_col = custom(2, 3, &[1.0, 0.0, 2.0, 3.0, 0.0, 1.0]);
        assert_eq!(nsp_order(&zero_col, 3).unwrap(), 0);
        let g = build_matrix(MatrixKind::Gaussian, 4, 8, 17, true).unwrap();
        assert_eq!(nsp_order(&g, 5).unwrap(), 2);
        assert_eq!(nsp_order(&identity(4), 4).unwrap(), 2);
    }

    #[test]
    fn rip_examples() {
        let id = identity(4);
        for k in 1..=4 {
            assert_eq!(rip_constant(&id, k, RipMethod::Exhaustive).unwrap().delta, 0.0);
        }
        let g = build_matrix(MatrixKind::Gaussian, 4, 8, 23, true).unwrap();
        assert!(rip_constant(&g, 1, RipMethod::Exhaustive).unwrap().delta < 1e-12);
        let ex = rip_constant(&g, 2, RipMethod::Exhaustive).unwrap();
        // brute-force oracle over all 28 pairs: for two unit columns the Gram
        // eigenvalues are 1 ± |<a_i, a_j>|, so δ_2 equals the coherence
        assert!(ex.is_exact);
        assert!((ex.delta - coherence(&g).unwrap()).abs() < 1e-12);
        let mc = rip_constant(&g, 2, RipMethod::MonteCarlo { trials: 20, seed: 4 }).unwrap();
        assert!(!mc.is_exact);
        assert!(mc.delta <= ex.delta);
    }

    #[test]
    fn rip_budget_error_names_count() {
        let g = build_matrix(MatrixKind::Gaussian, 10, 40, 1, true).unwrap();
        match rip_constant(&g, 10, RipMethod::Exhaustive) {
            Err(Error::BudgetExceeded { required, .. }) => assert_eq!(required, binomial(40, 10)),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn rip_to_nsp_values() {
        let limit = 2f64.sqrt() - 1.0;
        assert!(rip_to_nsp_constant(limit * (1.0 - 1e-4)).unwrap() > 1e3);
        assert!((rip_to_nsp_constant(0.1).unwrap() - 0.2636509763).abs() < 1e-9);
        assert!((rip_to_nsp_constant(0.2).unwrap() - 0.7734590803).abs() < 1e-9);
        for bad in [0.0, -0.1, limit, 0.5, f64::NAN] {
            assert!(rip_to_nsp_constant(bad).is_err());
        }
    }

    #[test]
    fn measurement_bounds() {
        assert_eq!(measurement_bound(50, 50, 2.0).unwrap(), 50);
        assert_eq!(measurement_bound(1024, 10, 2.0).unwrap(), 93);
        assert_eq!(measurement_bound(256, 4, 1.0).unwrap(), 17);
        assert!(measurement_bound(10, 0, 1.0).is_err());
        assert!(measurement_bound(10, 2, 0.0).is_err());
    }

    #[test]
    fn report_serializes_with_fixed_fields() {
        let r = certify(&identity(4), &CertifyOptions { sparsity: 2, ..Default::default() }).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["coherence", "welch_bound", "spark", "nsp_order", "rip", "min_measurements"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let rip0 = &v["rip"][0];
        for key in ["k", "delta", "method", "exact"] {
            assert!(rip0.get(key).is_some(), "{key}");
        }
        assert_eq!(v["spark"], serde_json::json!({"greater_than": 4}));
        assert_eq!(r.nsp_order, 2);
    }

    /// Collision pair from a dependent column set: split a null vector into
    /// two sparse halves with equal images.
    fn null_vector(a: &MeasurementMatrix, cols: &[usize]) -> Vec<f64> {
        let sub = a.entries().select_columns(cols.iter());
        let eig = (sub.transpose() * &sub).symmetric_eigen();
        let idx = eig.eigenvalues.imin();
        let mut full = vec![0.0; a.n()];
        for (t, &c) in cols.iter().enumerate() {
            full[c] = eig.eigenvectors[(t, idx)];
        }
        full
    }

    #[test]
    fn uniqueness_and_collision_on_small_gaussians() {
        for seed in 0..5u64 {
            let a = build_matrix(MatrixKind::Gaussian, 3, 6, seed, true).unwrap();
            let sp = spark(&a, 4).unwrap().exact().unwrap();
            assert_eq!(sp, 4);
            // 2k < 4 ⇒ k = 1: distinct ±1 1-sparse vectors never collide
            let mut images = Vec::new();
            for j in 0..6 {
                for s in [-1.0, 1.0] {
                    let mut x = vec![0.0; 6];
                    x[j] = s;
                    images.push(linalg::mat_vec(a.entries(), &x));
                }
            }
            for i in 0..images.len() {
                for j in i + 1..images.len() {
                    let d: f64 = images[i].iter().zip(&images[j]).map(|(p, q)| (p - q).abs()).sum();
                    assert!(d > 1e-9);
                }
            }
            // k = 2: a 4-column null vector splits into a colliding pair
            let z = null_vector(&a, &[0, 1, 2, 3]);
            let x1: Vec<f64> = z.iter().enumerate().map(|(i, v)| if i < 2 { *v } else { 0.0 }).collect();
            let x2: Vec<f64> = z.iter().enumerate().map(|(i, v)| if i >= 2 { -*v } else { 0.0 }).collect();
            let (y1, y2) = (linalg::mat_vec(a.entries(), &x1), linalg::mat_vec(a.entries(), &x2));
            assert!(y1.iter().zip(&y2).all(|(p, q)| (p - q).abs() < 1e-12));
            assert_ne!(x1, x2);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn welch_inequality(kind in prop::sample::select(MatrixKind::RANDOM.to_vec()), m in 1usize..8, extra in 1usize..8, seed: u64) {
            let n = m + extra;
            let a = build_matrix(kind, m, n, seed, true).unwrap();
            prop_assert!(coherence(&a).unwrap() >= welch_bound(m, n).unwrap() - 1e-12);
        }

        #[test]
        fn coherence_scale_invariant(seed: u64, col in 0usize..6, scale in prop_oneof![-50.0f64..-0.01, 0.01f64..50.0]) {
            let a = build_matrix(MatrixKind::Gaussian, 3, 6, seed, false).unwrap();
            let mut e = a.entries().clone();
            e.column_mut(col).scale_mut(scale);
            let b = MeasurementMatrix::custom(e, false).unwrap();
            prop_assert!((coherence(&a).unwrap() - coherence(&b).unwrap()).abs() < 1e-12);
        }

        #[test]
        fn duplicate_column_forces_spark_two(seed: u64, col in 0usize..5) {
            let a = build_matrix(MatrixKind::Gaussian, 3, 5, seed, true).unwrap();
            let e = a.entries().clone().insert_column(5, 0.0);
            let mut e = e;
            let dup = e.column(col).clone_owned();
            e.set_column(5, &dup);
            let b = MeasurementMatrix::custom(e, false).unwrap();
            prop_assert_eq!(spark(&b, 4).unwrap(), SparkResult::Exact(2));
        }

        #[test]
        fn spark_matches_elimination_oracle(seed: u64, m in 2usize..4, extra in 1usize..4) {
            let n = m + extra;
            let a = build_matrix(MatrixKind::Bernoulli, m, n, seed, false).unwrap();
            let cap = (m + 1).min(n);
            let ours = spark(&a, cap).unwrap();
            match spark_oracle(&a, cap) {
                Some(v) => prop_assert_eq!(ours, SparkResult::Exact(v)),
                None => prop_assert_eq!(ours, SparkResult::GreaterThan(cap)),
            }
            if let SparkResult::Exact(v) = ours {
                prop_assert!(v <= m + 1);
            }
        }

        #[test]
        fn rip_monotone_and_mc_below_exhaustive(seed: u64) {
            let a = build_matrix(MatrixKind::Gaussian, 4, 8, seed, true).unwrap();
            let mut prev = 0.0;
            for k in 1..=4 {
                let ex = rip_constant(&a, k, RipMethod::Exhaustive).unwrap();
                prop_assert!(ex.delta + 1e-12 >= prev);
                prev = ex.delta;
                let mc = rip_constant(&a, k, RipMethod::MonteCarlo { trials: 16, seed }).unwrap();
                prop_assert!(mc.delta <= ex.delta);
            }
        }

        #[test]
        fn rip_implies_nsp(seed: u64) {
            let a = build_matrix(MatrixKind::PartialDct, 6, 8, seed, true).unwrap();
            for k in 1..=3 {
                let d = rip_constant(&a, 2 * k, RipMethod::Exhaustive).unwrap().delta;
                if d < 2f64.sqrt() - 1.0 {
                    prop_assert!(nsp_order(&a, 7).unwrap() >= k);
                }
            }
        }
    }
}
