//! Command-line front end for the nonlocal existence analysis: single-point
//! verdicts, parameter-plane sweeps, circle data, zero listings and
//! finite-dimensional oracle runs.

// negated comparisons reject NaN on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod sweep;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Column, Config, Grid};
pub use error::CliError;
pub use sweep::{run_sweep, SweepResult, SweepSpec};

#[derive(Debug, Parser)]
#[command(
    name = "nonlocal",
    version,
    about = "Existence of mild solutions under nonlocal-in-time conditions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact verdict, kernel points and every sufficient criterion.
    Check(Common),
    /// Criterion masks over a grid of two real coefficients.
    Sweep(Common),
    /// Circumcircle of the sector image.
    Circle {
        #[command(flatten)]
        common: Common,
        /// Reduction denominator Q; defaults to the condition's.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Zeros of B in the principal strip.
    Roots {
        #[command(flatten)]
        common: Common,
        /// Refine every zero by Newton's method on B.
        #[arg(long)]
        polish: bool,
    },
    /// Mild solution and nonlocal residual for a diagonal operator.
    Oracle(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML configuration file.
    #[arg(long)]
    pub config: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated criterion names (sweep columns).
    #[arg(long)]
    pub criteria: Option<String>,
    /// Sweep grid "i:lo:hi:n,j:lo:hi:n" with one-based coefficient indices.
    #[arg(long)]
    pub grid: Option<String>,
    /// Gauss-Legendre nodes per unit time for the oracle.
    #[arg(long)]
    pub quad_nodes: Option<usize>,
    /// Largest admissible degree of the reduced polynomial.
    #[arg(long)]
    pub degree_cap: Option<usize>,
}

impl Common {
    /// Loads the config and applies flag overrides.
    pub fn load(&self) -> Result<Config, CliError> {
        let mut config = Config::load(&self.config)?;
        if let Some(list) = &self.criteria {
            config.columns = Some(Column::parse_list(list).map_err(|m| CliError::Config(format!("--criteria: {m}")))?);
        }
        if let Some(grid) = &self.grid {
            config.grid = Some(Grid::parse(grid).map_err(|m| CliError::Config(format!("--grid: {m}")))?);
        }
        if let Some(n) = self.quad_nodes {
            if n < 2 {
                return Err(CliError::Config(format!("--quad-nodes: need at least 2, got {n}")));
            }
            config.quad_nodes = n;
        }
        if let Some(cap) = self.degree_cap {
            if cap == 0 {
                return Err(CliError::Config("--degree-cap: must be positive".into()));
            }
            config.options.degree_cap = cap;
        }
        Ok(config)
    }
}

/// Runs one command and returns the report text with the output target.
pub fn execute(command: &Command) -> Result<(String, Option<PathBuf>), CliError> {
    let (common, text) = match command {
        Command::Check(c) => (c, commands::check(&c.load()?)?),
        Command::Sweep(c) => {
            let spec = SweepSpec::from_config(&c.load()?)?;
            (c, run_sweep(&spec)?.to_text())
        }
        Command::Circle { common, q } => (common, commands::circle(&common.load()?, *q)?),
        Command::Roots { common, polish } => (common, commands::roots(&common.load()?, *polish)?),
        Command::Oracle(c) => (c, commands::oracle(&c.load()?)?),
    };
    Ok((text, common.out.clone()))
}

/// Full run including output, returning the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(&cli.command).and_then(|(text, out)| {
        match out {
            Some(path) => std::fs::write(&path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
