//! Empirical phase transition diagrams over the plane of undersampling
//! `δ = m/n` and relative sparsity `ρ = k/m`.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{format_f64, trial_success, DEFAULT_SUCCESS_THRESHOLD};
use crate::model::{Amplitude, MatrixKind, NoiseModel};
use crate::recovery::{SolverConfig, SolverKind};
use crate::rng::derive_seed;
use crate::trial::{plant, solve, Setup};

/// Maximum number of trials (cells × trials per cell) a diagram may request
/// unless the config raises it.
pub const DEFAULT_TRIAL_BUDGET: u64 = 1_000_000;

/// `points` evenly spaced values `1/points, 2/points, …, 1`.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    (1..=points).map(|i| i as f64 / points as f64).collect()
}

fn default_n() -> usize {
    200
}
fn default_grid() -> Vec<f64> {
    uniform_grid(20)
}
fn default_trials() -> usize {
    50
}
fn default_matrix() -> MatrixKind {
    MatrixKind::Gaussian
}
fn default_solver() -> SolverConfig {
    SolverKind::Omp.into()
}
fn default_threshold() -> f64 {
    DEFAULT_SUCCESS_THRESHOLD
}
fn default_budget() -> u64 {
    DEFAULT_TRIAL_BUDGET
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseConfig {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_grid")]
    pub delta_grid: Vec<f64>,
    #[serde(default = "default_grid")]
    pub rho_grid: Vec<f64>,
    #[serde(default = "default_trials")]
    pub trials_per_cell: usize,
    #[serde(default = "default_matrix")]
    pub matrix: MatrixKind,
    #[serde(default = "default_solver")]
    pub solver: SolverConfig,
    #[serde(default = "default_threshold")]
    pub success_threshold: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub noise: NoiseModel,
    #[serde(default)]
    pub amplitude: Amplitude,
    #[serde(default = "yes")]
    pub normalize: bool,
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Worker threads; `None` uses the global pool. Does not affect results.
    #[serde(default, skip_serializing)]
    pub threads: Option<usize>,
}

impl Default for PhaseConfig {
    fn default() -> Self {
        PhaseConfig {
            n: default_n(),
            delta_grid: default_grid(),
            rho_grid: default_grid(),
            trials_per_cell: default_trials(),
            matrix: default_matrix(),
            solver: default_solver(),
            success_threshold: default_threshold(),
            seed: 0,
            noise: NoiseModel::None,
            amplitude: Amplitude::default(),
            normalize: true,
            budget: default_budget(),
            threads: None,
        }
    }
}

impl PhaseConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: PhaseConfig = crate::io::from_json(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn total_trials(&self) -> u128 {
        self.delta_grid.len() as u128 * self.rho_grid.len() as u128 * self.trials_per_cell as u128
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if self.trials_per_cell == 0 {
            return Err(Error::invalid("trials_per_cell must be at least 1"));
        }
        for (name, grid) in [("delta_grid", &self.delta_grid), ("rho_grid", &self.rho_grid)] {
            if grid.is_empty() {
                return Err(Error::invalid(format!("{name} is empty")));
            }
            if let Some(v) = grid.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
                return Err(Error::invalid(format!("{name} value {v} is outside (0, 1]")));
            }
            if grid.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid(format!("{name} must be strictly increasing")));
            }
        }
        if !(self.success_threshold > 0.0 && self.success_threshold <= 1.0) {
            return Err(Error::invalid("success_threshold must lie in (0, 1]"));
        }
        NoiseModel::awgn(self.noise.sigma())?;
        match self.matrix {
            MatrixKind::Custom => {
                return Err(Error::invalid("phase diagrams need a generated ensemble, not custom"))
            }
            MatrixKind::Identity => {
                if let Some(d) = self.delta_grid.iter().find(|d| cell_params(**d, 1.0, self.n).m != self.n) {
                    return Err(Error::invalid(format!(
                        "identity ensemble requires m = n but delta {d} gives m < n"
                    )));
                }
            }
            _ => {}
        }
        if self.threads == Some(0) {
            return Err(Error::invalid("threads must be at least 1"));
        }
        self.solver.spec_for(1, 1, 0.0).validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellParams {
    pub m: usize,
    pub k: usize,
}

/// `m = clamp(round(δ·n), 1, n)` and `k = clamp(round(ρ·m), 1, m)`.
pub fn cell_params(delta: f64, rho: f64, n: usize) -> CellParams {
    let n = n.max(1);
    let m = ((delta * n as f64).round() as usize).clamp(1, n);
    let k = ((rho * m as f64).round() as usize).clamp(1, m);
    CellParams { m, k }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseCell {
    pub delta: f64,
    pub rho: f64,
    pub m: usize,
    pub k: usize,
    pub successes: usize,
    pub trials: usize,
    pub success_prob: f64,
    #[serde(rename = "mean_recovery_time_s")]
    pub mean_recovery_time: f64,
}

/// Success probabilities; `cells[i][j]` is `(delta_grid[i], rho_grid[j])`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseGrid {
    pub config: PhaseConfig,
    pub cells: Vec<Vec<PhaseCell>>,
}

/// Runs the diagram. Trial `t` of cell `(i, j)` uses the seed
/// `derive_seed(seed, &[i, j, t])`, so results do not depend on scheduling.
pub fn run_phase_diagram(config: &PhaseConfig) -> Result<PhaseGrid> {
    config.validate()?;
    let total = config.total_trials();
    if total > config.budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "phase diagram trials",
            required: total,
            budget: config.budget as u128,
        });
    }
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start {t} worker threads: {e}")))?
            .install(|| run_cells(config)),
        None => run_cells(config),
    }
}

fn run_cells(c: &PhaseConfig) -> Result<PhaseGrid> {
    let (nd, nr, nt) = (c.delta_grid.len(), c.rho_grid.len(), c.trials_per_cell);
    let outcomes: Vec<(bool, f64)> = (0..nd * nr * nt)
        .into_par_iter()
        .map(|idx| {
            let (i, j, t) = (idx / (nr * nt), idx / nt % nr, idx % nt);
            phase_trial(c, i, j, t).map_err(|e| Error::Trial {
                coordinates: format!("delta={} rho={} trial={t}", c.delta_grid[i], c.rho_grid[j]),
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    let cells = (0..nd)
        .map(|i| {
            (0..nr)
                .map(|j| {
                    let p = cell_params(c.delta_grid[i], c.rho_grid[j], c.n);
                    let block = &outcomes[(i * nr + j) * nt..][..nt];
                    let successes = block.iter().filter(|o| o.0).count();
                    PhaseCell {
                        delta: c.delta_grid[i],
                        rho: c.rho_grid[j],
                        m: p.m,
                        k: p.k,
                        successes,
                        trials: nt,
                        success_prob: successes as f64 / nt as f64,
                        mean_recovery_time: block.iter().map(|o| o.1).sum::<f64>() / nt as f64,
                    }
                })
                .collect()
        })
        .collect();
    Ok(PhaseGrid {
        config: c.clone(),
        cells,
    })
}

fn phase_trial(c: &PhaseConfig, i: usize, j: usize, t: usize) -> Result<(bool, f64)> {
    let p = cell_params(c.delta_grid[i], c.rho_grid[j], c.n);
    let setup = Setup {
        kind: c.matrix,
        n: c.n,
        m: p.m,
        k: p.k,
        amplitude: c.amplitude,
        noise: c.noise,
        normalize: c.normalize,
    };
    let planted = plant(&setup, derive_seed(c.seed, &[i as u64, j as u64, t as u64]))?;
    let start = Instant::now();
    let r = solve(&planted, &setup, &c.solver)?;
    let elapsed = start.elapsed().as_secs_f64();
    let ok = trial_success(planted.x.values(), &r.x_hat, c.success_threshold)?;
    Ok((ok, elapsed))
}

impl PhaseGrid {
    pub fn cell(&self, i: usize, j: usize) -> &PhaseCell {
        &self.cells[i][j]
    }

    /// Cell nearest to `(delta, rho)` on the grid.
    pub fn nearest(&self, delta: f64, rho: f64) -> &PhaseCell {
        let closest = |grid: &[f64], v: f64| {
            (0..grid.len())
                .min_by(|&a, &b| (grid[a] - v).abs().total_cmp(&(grid[b] - v).abs()))
                .unwrap_or(0)
        };
        self.cell(closest(&self.config.delta_grid, delta), closest(&self.config.rho_grid, rho))
    }

    pub fn csv_header() -> &'static str {
        "delta,rho,m,k,trials,successes,success_prob,mean_recovery_time_s"
    }

    /// One row per cell, delta-major.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::csv_header());
        out.push('\n');
        for c in self.cells.iter().flatten() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                format_f64(c.delta),
                format_f64(c.rho),
                c.m,
                c.k,
                c.trials,
                c.successes,
                format_f64(c.success_prob),
                format_f64(c.mean_recovery_time),
            );
        }
        out
    }

    fn column(&self, i: usize) -> Vec<f64> {
        self.cells[i].iter().map(|c| c.success_prob).collect()
    }

    /// ρ at which success probability first falls through `level` in each δ
    /// column, interpolated linearly between neighbouring grid points.
    /// `None` when the column never crosses `level`.
    pub fn transition_curve(&self, level: f64) -> Vec<Option<f64>> {
        (0..self.cells.len())
            .map(|i| crossing(&self.config.rho_grid, &self.column(i), level))
            .collect()
    }

    /// Per δ column, the mean success probability over the upper half of
    /// the ρ grid minus the mean over the lower half. Values above zero
    /// break monotonicity.
    pub fn monotonicity_gaps(&self) -> Vec<f64> {
        (0..self.cells.len()).map(|i| half_gap(&self.column(i))).collect()
    }

    pub fn is_monotone_within(&self, tol: f64) -> bool {
        self.monotonicity_gaps().iter().all(|g| *g <= tol)
    }

    /// SVG heatmap: δ grows to the right, ρ upwards. Colors run linearly in
    /// sRGB from `#f7fbff` (probability 0) to `#08306b` (probability 1). The
    /// 50% transition curve is overlaid in orange.
    pub fn to_svg(&self) -> String {
        const CELL: f64 = 24.0;
        const MARGIN: f64 = 48.0;
        let (nd, nr) = (self.cells.len(), self.config.rho_grid.len());
        let (w, h) = (nd as f64 * CELL, nr as f64 * CELL);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="11">"#,
            w + 2.0 * MARGIN,
            h + 2.0 * MARGIN
        );
        let _ = writeln!(
            s,
            r#"<title>success probability, {} / {}, n = {}, {} trials per cell</title>"#,
            self.config.matrix, self.config.solver.kind, self.config.n, self.config.trials_per_cell
        );
        for (i, col) in self.cells.iter().enumerate() {
            for (j, c) in col.iter().enumerate() {
                let _ = writeln!(
                    s,
                    r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{}"><title>delta={} rho={} p={}</title></rect>"#,
                    MARGIN + i as f64 * CELL,
                    MARGIN + h - (j + 1) as f64 * CELL,
                    ramp(c.success_prob),
                    c.delta,
                    c.rho,
                    c.success_prob
                );
            }
        }
        let x_of = |i: f64| MARGIN + (i + 0.5) * CELL;
        let y_of = |rho: f64| {
            let g = &self.config.rho_grid;
            let pos = match g.iter().position(|r| *r >= rho) {
                Some(0) => 0.0,
                Some(p) => (p - 1) as f64 + (rho - g[p - 1]) / (g[p] - g[p - 1]),
                None => (g.len() - 1) as f64,
            };
            MARGIN + h - (pos + 0.5) * CELL
        };
        let points: Vec<String> = self
            .transition_curve(0.5)
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.map(|r| format!("{:.2},{:.2}", x_of(i as f64), y_of(r))))
            .collect();
        if points.len() > 1 {
            let _ = writeln!(
                s,
                r##"<polyline points="{}" fill="none" stroke="#f16913" stroke-width="2"/>"##,
                points.join(" ")
            );
        }
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{h}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">delta = m/n</text>"#,
            MARGIN + w / 2.0,
            MARGIN + h + 32.0
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">rho = k/m</text>"#,
            MARGIN + h / 2.0,
            MARGIN + h / 2.0
        );
        s.push_str("</svg>\n");
        s
    }
}

fn ramp(p: f64) -> String {
    const LO: [f64; 3] = [247.0, 251.0, 255.0];
    const HI: [f64; 3] = [8.0, 48.0, 107.0];
    let p = p.clamp(0.0, 1.0);
    let c: Vec<u8> = (0..3).map(|i| (LO[i] + p * (HI[i] - LO[i])).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn crossing(rho: &[f64], p: &[f64], level: f64) -> Option<f64> {
    (0..p.len().saturating_sub(1)).find_map(|j| {
        if p[j] >= level && p[j + 1] < level {
            let t = (p[j] - level) / (p[j] - p[j + 1]);
            Some(rho[j] + t * (rho[j + 1] - rho[j]))
        } else {
            None
        }
    })
}

fn half_gap(col: &[f64]) -> f64 {
    let half = col.len() / 2;
    if half == 0 {
        return 0.0;
    }
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    mean(&col[col.len() - half..]) - mean(&col[..half])
}
