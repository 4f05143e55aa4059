// SPDX-License-Identifier: Apache-2.0

//! `qcontext`: incompatibility measures for measurement contexts from the command line.

mod document;
mod error;
mod output;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qcontext_core::bloch::{basis_to_bloch_frame, geometric_maps, state_to_bloch, BlochVector, GeneratorSet};
use qcontext_core::incompatibility::{report, Classification};
use qcontext_core::leakage::{lin_grid, log_grid, noise_sweep, stinespring_ledger};
use qcontext_core::mub::{maximize_incompatibility, SearchConfig};
use qcontext_core::{Error as CoreError, ObservableBasis};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::document::ContextDocument;
use crate::error::CliError;
use crate::output::{csv_number, fixed12, fixed12_vec, sig12};

/// Environment variable holding the default seed for `qcontext mub`.
pub const SEED_ENV: &str = "QCTX_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "qcontext",
    version,
    about = "Context and measurement incompatibility calculator"
)]
struct Cli {
    /// Report information quantities in bits instead of nats.
    #[arg(long, global = true)]
    bits: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Context incompatibility, leakage ratio, measurement incompatibility and classification.
    Measure { input: PathBuf },
    /// Exact information values of the context under depolarizing noise, as CSV.
    Sweep {
        input: PathBuf,
        /// `log:<lo>:<hi>:<n>` or `lin:<lo>:<hi>:<n>`, with 0 < lo <= hi <= 1.
        #[arg(long, default_value = "log:1e-4:1:20")]
        eps_grid: String,
    },
    /// Dilated eavesdropping run and its information ledger.
    Protocol { input: PathBuf },
    /// Search for a basis unbiased to the computational basis.
    Mub {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol_mub: f64,
        /// Also write the optimizer trajectory as CSV.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Bloch vectors of the state and both measurement frames.
    Bloch { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("qcontext: {}", CliError::Output(e));
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("qcontext: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let units = Units::new(cli.bits);
    match &cli.command {
        Command::Measure { input } => measure(&load(input)?, units),
        Command::Sweep { input, eps_grid } => {
            let grid = parse_grid(eps_grid)?;
            sweep(&load(input)?, &grid, units)
        }
        Command::Protocol { input } => protocol(&load(input)?, units),
        Command::Mub {
            dim,
            restarts,
            seed,
            max_iters,
            tol_mub,
            trajectory,
        } => {
            let mut config = SearchConfig::new(*dim);
            config.restarts = *restarts;
            config.seed = *seed;
            config.max_iters = *max_iters;
            config.tol_mub = *tol_mub;
            mub(&config, trajectory.as_deref())
        }
        Command::Bloch { input } => bloch(&load(input)?),
    }
}

fn load(path: &Path) -> Result<qcontext_core::Context, CliError> {
    ContextDocument::read(path)?.to_context()
}

#[derive(Debug, Clone, Copy)]
struct Units {
    label: &'static str,
    scale: f64,
}

impl Units {
    fn new(bits: bool) -> Self {
        if bits {
            Units {
                label: "bits",
                scale: std::f64::consts::LN_2,
            }
        } else {
            Units {
                label: "nats",
                scale: 1.0,
            }
        }
    }

    fn info(self, nats: f64) -> f64 {
        sig12(nats / self.scale)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct MeasureOutput {
    units: &'static str,
    i_context: f64,
    i_initial: f64,
    i_final: f64,
    ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio_reason: Option<&'static str>,
    m_measurement: f64,
    classification: Classification,
}

fn measure(ctx: &qcontext_core::Context, units: Units) -> Result<String, CliError> {
    let r = report(ctx);
    Ok(to_json(&MeasureOutput {
        units: units.label,
        i_context: units.info(r.i_context),
        i_initial: units.info(r.i_initial),
        i_final: units.info(r.i_final),
        ratio: r.ratio.map(sig12),
        ratio_reason: r.ratio.is_none().then_some("ZERO_INFO"),
        m_measurement: sig12(r.m_measurement),
        classification: r.classification,
    }))
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Grid(format!("{spec:?}: {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [kind, lo, hi, n] = parts[..] else {
        return Err(bad("expected <log|lin>:<lo>:<hi>:<n>"));
    };
    let lo: f64 = lo.parse().map_err(|_| bad("lower bound is not a number"))?;
    let hi: f64 = hi.parse().map_err(|_| bad("upper bound is not a number"))?;
    let n: usize = n
        .parse()
        .map_err(|_| bad("point count is not a non-negative integer"))?;
    if n == 0 {
        return Err(bad("point count must be positive"));
    }
    if !(lo > 0.0 && lo <= hi && hi <= 1.0) {
        return Err(bad("bounds must satisfy 0 < lo <= hi <= 1"));
    }
    match kind {
        "log" => Ok(log_grid(lo, hi, n)),
        "lin" => Ok(lin_grid(lo, hi, n)),
        _ => Err(bad("kind must be log or lin")),
    }
}

fn sweep(ctx: &qcontext_core::Context, grid: &[f64], units: Units) -> Result<String, CliError> {
    let points = noise_sweep(ctx, grid).map_err(|e| match e {
        CoreError::OutOfRange { .. } => CliError::Grid(e.to_string()),
        other => CliError::Invariant(other),
    })?;
    let mut out = String::from("epsilon,i_initial,i_final,ratio\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            csv_number(p.epsilon),
            csv_number(units.info(p.i_initial_eps)),
            csv_number(units.info(p.i_final_eps)),
            csv_number(p.ratio_eps),
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct ProtocolOutput {
    units: &'static str,
    i_initial: f64,
    i_final: f64,
    delta_apparatus: f64,
    mutual_info: f64,
    balance_residual: f64,
}

fn protocol(ctx: &qcontext_core::Context, units: Units) -> Result<String, CliError> {
    let entry = stinespring_ledger(ctx).map_err(CliError::Protocol)?;
    Ok(to_json(&ProtocolOutput {
        units: units.label,
        i_initial: units.info(entry.i_initial),
        i_final: units.info(entry.i_final),
        delta_apparatus: units.info(entry.delta_apparatus),
        mutual_info: units.info(entry.mutual_info),
        balance_residual: units.info(entry.balance_residual()),
    }))
}

#[derive(Serialize)]
struct MubOutput {
    dim: usize,
    seed: u64,
    objective: Box<RawValue>,
    certified_mub: bool,
    max_deviation: f64,
    restarts_used: usize,
    iterations: usize,
    /// Eigenvectors as columns, entries `[re, im]`.
    basis: Vec<Vec<[Box<RawValue>; 2]>>,
}

fn mub(config: &SearchConfig, trajectory: Option<&Path>) -> Result<String, CliError> {
    config.validate().map_err(CliError::Search)?;
    let fixed = ObservableBasis::computational(config.dim);
    let result = maximize_incompatibility(&fixed, config).map_err(CliError::Search)?;
    if let Some(path) = trajectory {
        let mut csv = String::from("restart,iteration,objective\n");
        for t in &result.trajectory {
            csv.push_str(&format!("{},{},{:.12}\n", t.restart, t.iteration, t.objective));
        }
        std::fs::write(path, csv).map_err(CliError::Output)?;
    }
    let v = result.best_basis.vectors();
    let basis = (0..v.nrows())
        .map(|r| {
            (0..v.ncols())
                .map(|c| [fixed12(v[(r, c)].re), fixed12(v[(r, c)].im)])
                .collect()
        })
        .collect();
    Ok(to_json(&MubOutput {
        dim: config.dim,
        seed: config.seed,
        objective: fixed12(result.objective),
        certified_mub: result.certified_mub,
        max_deviation: sig12(result.max_deviation),
        restarts_used: result.restarts_used,
        iterations: result.trajectory.len(),
        basis,
    }))
}

#[derive(Serialize)]
struct BlochOutput {
    dim: usize,
    r: Vec<Box<RawValue>>,
    u: Vec<Box<RawValue>>,
    v: Vec<Box<RawValue>>,
    x_frame: Vec<Vec<Box<RawValue>>>,
    y_frame: Vec<Vec<Box<RawValue>>>,
    /// `x_i . x_j`
    x_dots: Vec<Vec<Box<RawValue>>>,
    /// `y_i . y_j`
    y_dots: Vec<Vec<Box<RawValue>>>,
    /// `x_j . y_k`
    xy_dots: Vec<Vec<Box<RawValue>>>,
}

fn bloch(ctx: &qcontext_core::Context) -> Result<String, CliError> {
    let gens = GeneratorSet::new(ctx.dim()).map_err(CliError::Geometry)?;
    let r = state_to_bloch(&ctx.state, &gens).map_err(CliError::Geometry)?;
    let xf = basis_to_bloch_frame(&ctx.first, &gens).map_err(CliError::Geometry)?;
    let yf = basis_to_bloch_frame(&ctx.second, &gens).map_err(CliError::Geometry)?;
    let (u, v) = geometric_maps(&r, &xf, &yf).map_err(CliError::Geometry)?;
    let vector = |b: &BlochVector| fixed12_vec(b.components().iter().copied());
    let dots = |a: &[BlochVector], b: &[BlochVector]| {
        a.iter()
            .map(|p| fixed12_vec(b.iter().map(|q| p.dot(q))))
            .collect::<Vec<_>>()
    };
    Ok(to_json(&BlochOutput {
        dim: ctx.dim(),
        r: vector(&r),
        u: vector(&u),
        v: vector(&v),
        x_frame: xf.iter().map(vector).collect(),
        y_frame: yf.iter().map(vector).collect(),
        x_dots: dots(&xf, &xf),
        y_dots: dots(&yf, &yf),
        xy_dots: dots(&xf, &yf),
    }))
}
