//! Command-line front end for `suita-core`: domain and weight files,
//! parallel grid sampling, and JSON/CSV output.
//!
//! Exit codes: 0 on success, 2 for invalid input (files, flags, geometry),
//! 3 for numerical failures (ill-conditioned systems, indefinite Gram
//! matrices).

pub mod commands;
pub mod spec;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

/// Top-level command line.
#[derive(Debug, Parser)]
#[command(name = "suita", version, about = "Potential theory on multiply connected planar domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

/// Options shared by every solver-backed command.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Domain description (JSON).
    pub domain: PathBuf,
    /// Boundary nodes per curve.
    #[arg(long, default_value_t = 256)]
    pub nodes: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a domain and report its geometry.
    Check {
        /// Domain description (JSON).
        domain: PathBuf,
    },
    /// Harmonic measures u_1..u_n at a point or on a grid (CSV).
    HarmonicMeasure {
        #[command(flatten)]
        common: Common,
        /// Single evaluation point `x,y`.
        #[arg(long, value_parser = parse_point, conflicts_with = "grid")]
        at: Option<(f64, f64)>,
        /// Grid nodes per axis over the bounding box.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Green function with pole `--pole` (CSV rows or a single value).
    Green {
        #[command(flatten)]
        common: Common,
        /// Pole `x,y`.
        #[arg(long, value_parser = parse_point)]
        pole: (f64, f64),
        /// Single evaluation point `x,y`.
        #[arg(long, value_parser = parse_point, conflicts_with = "grid")]
        at: Option<(f64, f64)>,
        /// Grid nodes per axis over the bounding box.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Logarithmic capacity at points read from a CSV file of `x,y` rows.
    Capacity {
        #[command(flatten)]
        common: Common,
        /// CSV file of points.
        #[arg(long)]
        points: PathBuf,
    },
    /// Green and weight periods on the canonical cycles (JSON).
    Periods {
        #[command(flatten)]
        common: Common,
        /// Weight description (JSON); trivial weight when absent.
        #[arg(long)]
        weight: Option<PathBuf>,
        /// Pole `x,y` for the Green periods.
        #[arg(long, value_parser = parse_point)]
        pole: Option<(f64, f64)>,
    },
    /// Equality locus for order `--k` (JSON).
    Locus {
        #[command(flatten)]
        common: Common,
        /// Derivative order; defaults to the weight file's `k`.
        #[arg(long)]
        k: Option<u32>,
        /// Weight description (JSON).
        #[arg(long)]
        weight: Option<PathBuf>,
        /// Grid nodes per axis.
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Membership tolerance.
        #[arg(long, default_value_t = suita_core::locus::DEFAULT_TOL)]
        tol: f64,
        /// Report raw marching-squares vertices without Newton refinement.
        #[arg(long)]
        no_refine: bool,
        /// Also write the sampled residual field as CSV.
        #[arg(long)]
        residual_csv: Option<PathBuf>,
    },
    /// Weighted Bergman kernel for derivative order `--k` and the Suita ratio (JSON).
    Bergman {
        #[command(flatten)]
        common: Common,
        /// Derivative order; defaults to the weight file's `k`.
        #[arg(long)]
        k: Option<u32>,
        /// Weight description (JSON).
        #[arg(long)]
        weight: Option<PathBuf>,
        /// Base point `x,y`.
        #[arg(long, value_parser = parse_point)]
        point: (f64, f64),
        /// Trial degree M.
        #[arg(long)]
        degree: usize,
        /// Area quadrature node budget (per radial interval).
        #[arg(long)]
        quad_nodes: Option<usize>,
        /// Also report B for degrees k, k+5, ..., M.
        #[arg(long)]
        sweep: bool,
    },
    /// Search for the smallest order with an equality point (triply connected domains, JSON).
    Feasibility {
        #[command(flatten)]
        common: Common,
        /// Largest order to try.
        #[arg(long)]
        kmax: u32,
        /// Residual target.
        #[arg(long, default_value_t = suita_core::locus::DEFAULT_TOL)]
        target: f64,
        /// Grid nodes per axis.
        #[arg(long, default_value_t = 128)]
        grid: usize,
    },
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad coordinate `{t}`: {e}"));
    let p = (parse(x)?, parse(y)?);
    if !(p.0.is_finite() && p.1.is_finite()) {
        return Err("coordinates must be finite".into());
    }
    Ok(p)
}

/// Failure of a command, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<suita_core::Error> for CliError {
    fn from(e: suita_core::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

impl From<spec::SpecError> for CliError {
    fn from(e: spec::SpecError) -> Self {
        match e {
            spec::SpecError::Domain(e) => e.into(),
            e => CliError::Validation(e.to_string()),
        }
    }
}

/// Runs a parsed command line and writes its output.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let pool = commands::thread_pool()?;
    let text = pool.install(|| commands::execute(&cli.command))?;
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
