//! `cseval` command-line interface.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 on a runtime error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cseval::certify::CertifyOptions;
use cseval::io;
use cseval::metrics::{default_sparsity_tol, Timings, TrialData, DEFAULT_SUCCESS_THRESHOLD};
use cseval::phase::uniform_grid;
use cseval::rng::derive_seed;
use cseval::{
    build_matrix, certify, generate_sparse_signal, measure, parse_config, recover, run_campaign,
    run_phase_diagram, write_outputs, Amplitude, MatrixKind, MeasurementMatrix, MetricReport,
    NoiseModel, PhaseConfig, SolverConfig, SolverKind,
};

#[derive(Parser)]
#[command(name = "cseval", version, about = "Compressive-sensing evaluation toolkit")]
struct Cli {
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (certify, recover) or directory (gen, phase, campaign).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for phase and campaign runs.
    #[arg(long, global = true, env = "CSEVAL_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a measurement matrix and optionally a planted signal.
    Gen(GenArgs),
    /// Certify a matrix file or a generated ensemble.
    Certify(CertifyArgs),
    /// Recover one planted instance end to end and print its metrics.
    Recover(RecoverArgs),
    /// Run a phase transition diagram and write CSV and SVG.
    Phase(PhaseArgs),
    /// Run a campaign config and write its outputs.
    Campaign(CampaignArgs),
}

#[derive(Args)]
struct EnsembleArgs {
    /// Matrix ensemble.
    #[arg(long, default_value = "gaussian")]
    kind: MatrixKind,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Keep raw column scaling.
    #[arg(long)]
    no_normalize: bool,
    /// Read the matrix from a CSV or JSON file instead.
    #[arg(long, conflicts_with_all = ["m", "kind"])]
    matrix: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Also plant a signal with this many nonzeros.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "unit_gaussian")]
    amplitude: Amplitude,
    /// File format when writing to a directory.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Largest support size examined by the spark search.
    #[arg(long)]
    spark_cap: Option<usize>,
    /// RIP orders to estimate.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    rip_orders: Vec<usize>,
    /// Monte-Carlo supports when exhaustive RIP is over budget.
    #[arg(long, default_value_t = cseval::certify::DEFAULT_MC_TRIALS)]
    mc_trials: usize,
    /// Sparsity for the measurement bound.
    #[arg(long, default_value_t = 1)]
    sparsity: usize,
}

#[derive(Args)]
struct RecoverArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value = "omp")]
    solver: SolverKind,
    /// Standard deviation of additive Gaussian noise.
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    #[arg(long, default_value = "unit_gaussian")]
    amplitude: Amplitude,
    /// Read the signal from a CSV or JSON file instead of planting one.
    #[arg(long)]
    signal: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SUCCESS_THRESHOLD)]
    threshold: f64,
}

#[derive(Args)]
struct PhaseArgs {
    /// JSON config; flags override its fields.
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Points per axis of a uniform grid over (0, 1].
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    kind: Option<MatrixKind>,
    #[arg(long)]
    solver: Option<SolverKind>,
}

#[derive(Args)]
struct CampaignArgs {
    /// JSON config.
    config: PathBuf,
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if cli.threads == Some(0) {
        return Err(Failure("--threads must be at least 1".into()));
    }
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Gen(a) => gen(a, seed, cli.out.as_deref()),
        Command::Certify(a) => certify_cmd(a, seed, cli.out.as_deref()),
        Command::Recover(a) => recover_cmd(a, seed, cli.out.as_deref()),
        Command::Phase(a) => phase(a, cli.seed, cli.out, cli.threads),
        Command::Campaign(a) => campaign(a, cli.seed, cli.out, cli.threads),
    }
}

fn emit(value: &serde_json::Value, out: Option<&Path>) -> Outcome {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn matrix_for(e: &EnsembleArgs, seed: u64) -> Result<MeasurementMatrix, Failure> {
    if let Some(path) = &e.matrix {
        return Ok(io::load_matrix(path, !e.no_normalize)?);
    }
    let n = e.n.ok_or_else(|| Failure("--n is required unless --matrix is given".into()))?;
    let m = match (e.m, e.kind) {
        (Some(m), _) => m,
        (None, MatrixKind::Identity) => n,
        (None, _) => return Err(Failure("--m is required unless --matrix is given".into())),
    };
    Ok(build_matrix(e.kind, m, n, seed, !e.no_normalize)?)
}

fn gen(a: GenArgs, seed: u64, out: Option<&Path>) -> Outcome {
    let matrix = matrix_for(&a.ensemble, derive_seed(seed, &[0]))?;
    let signal = match a.k {
        Some(k) => Some(generate_sparse_signal(matrix.n(), k, a.amplitude, derive_seed(seed, &[1]))?),
        None => None,
    };
    let Some(dir) = out else {
        let matrix: serde_json::Value = serde_json::from_str(&io::matrix_to_json(&matrix))?;
        let signal = match &signal {
            Some(x) => serde_json::from_str(&io::signal_to_json(x, Some(a.amplitude), Some(derive_seed(seed, &[1]))))?,
            None => serde_json::Value::Null,
        };
        return emit(&json!({ "matrix": matrix, "signal": signal }), None);
    };
    fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
    let ext = a.format.as_str();
    io::save_matrix(&matrix, &dir.join(format!("matrix.{ext}")))?;
    if let Some(x) = &signal {
        let path = dir.join(format!("signal.{ext}"));
        let text = if ext == "json" {
            io::signal_to_json(x, Some(a.amplitude), Some(derive_seed(seed, &[1])))
        } else {
            io::signal_to_csv(x)
        };
        fs::write(&path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn certify_cmd(a: CertifyArgs, seed: u64, out: Option<&Path>) -> Outcome {
    let matrix = matrix_for(&a.ensemble, seed)?;
    let opts = CertifyOptions {
        spark_cap: a.spark_cap,
        rip_orders: a.rip_orders,
        mc_trials: a.mc_trials,
        seed,
        sparsity: a.sparsity,
        ..CertifyOptions::default()
    };
    let report = certify(&matrix, &opts)?;
    let mut value = serde_json::to_value(&report)?;
    value["matrix"] = json!({
        "kind": matrix.kind(),
        "m": matrix.m(),
        "n": matrix.n(),
        "id": matrix.id(),
    });
    emit(&value, out)
}

fn recover_cmd(a: RecoverArgs, seed: u64, out: Option<&Path>) -> Outcome {
    let start = std::time::Instant::now();
    let matrix = matrix_for(&a.ensemble, derive_seed(seed, &[0]))?;
    let x = match &a.signal {
        Some(path) => io::load_signal(path)?,
        None => generate_sparse_signal(matrix.n(), a.k, a.amplitude, derive_seed(seed, &[1]))?,
    };
    let noise = NoiseModel::awgn(a.sigma)?;
    let y = measure(&matrix, x.values(), noise, derive_seed(seed, &[2]))?;
    let spec = SolverConfig::from(a.solver).spec_for(x.k(), matrix.m(), noise.sigma());
    let result = recover(&matrix, &y, &spec)?;
    let y_hat = cseval::linalg::mat_vec(matrix.entries(), &result.x_hat);
    let timings = Timings {
        sampling_time_s: y.sampling_time,
        recovery_time_s: result.recovery_time,
        processing_time_s: start.elapsed().as_secs_f64(),
    };
    let data = TrialData {
        x: &x,
        x_hat: &result.x_hat,
        y: &y.y,
        y_hat: &y_hat,
        m: matrix.m(),
        timings,
    };
    let report = MetricReport::compute(&data, Some(default_sparsity_tol(x.values())), None, a.threshold)?;
    let value = json!({
        "matrix_kind": matrix.kind(),
        "matrix_id": matrix.id(),
        "solver": result.solver,
        "n": matrix.n(),
        "m": matrix.m(),
        "k": x.k(),
        "seed": seed,
        "success": report.success && result.converged,
        "converged": result.converged,
        "iterations": result.iterations,
        "residual_norm": result.residual_norm,
        "metrics": report,
    });
    emit(&value, out)
}

fn phase(a: PhaseArgs, seed: Option<u64>, out: Option<PathBuf>, threads: Option<usize>) -> Outcome {
    let mut config = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            PhaseConfig::from_json(&text)?
        }
        None => PhaseConfig::default(),
    };
    if let Some(n) = a.n {
        config.n = n;
    }
    if let Some(points) = a.grid {
        config.delta_grid = uniform_grid(points);
        config.rho_grid = uniform_grid(points);
    }
    if let Some(t) = a.trials {
        config.trials_per_cell = t;
    }
    if let Some(kind) = a.kind {
        config.matrix = kind;
    }
    if let Some(solver) = a.solver {
        config.solver = solver.into();
    }
    if let Some(s) = seed {
        config.seed = s;
    }
    config.threads = threads.or(config.threads);
    let grid = run_phase_diagram(&config)?;
    let dir = out.unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
    for (name, text) in [("phase.csv", grid.to_csv()), ("phase.svg", grid.to_svg())] {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    emit(
        &json!({
            "cells": grid.cells.iter().map(Vec::len).sum::<usize>(),
            "trials_per_cell": config.trials_per_cell,
            "monotone_within_0.05": grid.is_monotone_within(0.05),
            "transition_rho_50": grid.transition_curve(0.5),
            "csv": dir.join("phase.csv"),
            "svg": dir.join("phase.svg"),
        }),
        None,
    )
}

fn campaign(a: CampaignArgs, seed: Option<u64>, out: Option<PathBuf>, threads: Option<usize>) -> Outcome {
    let text = fs::read_to_string(&a.config).map_err(|e| Failure(format!("{}: {e}", a.config.display())))?;
    let mut config = parse_config(&text)?;
    if let Some(s) = seed {
        config.seed = s;
    }
    config.threads = threads.or(config.threads);
    let dir = out
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    let result = run_campaign(&config)?;
    let manifest = write_outputs(&result, &dir)?;
    emit(
        &json!({
            "output_dir": dir,
            "trial_rows": manifest.trial_rows,
            "aggregate_rows": manifest.aggregate_rows,
            "skipped_combinations": manifest.skipped_combinations,
            "config_sha256": manifest.config_sha256,
        }),
        None,
    )
}
