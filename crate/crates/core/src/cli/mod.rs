//! Command-line front end.
//!
//! ```text
//! vacent run --config PATH [--out PATH]
//! vacent sweep --config PATH [--out PATH]
//! vacent figure <id> [--out PATH] [--paper-positions] [--steps N] [--set KEY=VALUE]...
//! vacent verify [--level quick|full]
//! ```
//!
//! Exit status: 0 success, 1 I/O failure, 2 configuration error, 3 numerical
//! failure.

pub mod config;
pub mod dataset;
pub mod figures;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use config::{parse_config, render_config, RunConfig};
pub use dataset::{embedded_configs, Dataset};
pub use figures::{figure_dataset, FigureId, FigureOptions};
pub use verify::{verify, verify_with, Level, Report};

use crate::error::{Error, Result};
use crate::scenarios::{sweep, Param, SweepTable};

#[derive(Debug, Parser)]
#[command(name = "vacent", version, about = "Entanglement harvesting by oscillator detectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a configuration (a single point, or its sweep grid).
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the sweep grid of a configuration.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce a figure dataset.
    Figure {
        /// fig2a, fig2b, fig2c, fig2d, fig3a or fig3b
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Place detectors at ±x instead of ±x/2.
        #[arg(long = "paper-positions")]
        outer_positions: bool,
        /// Points per axis.
        #[arg(long)]
        steps: Option<usize>,
        /// Override a fixed parameter, e.g. `--set r=0`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Check the engine's invariants (and, at `full`, agreement with the
    /// Fock-space oracle).
    Verify {
        #[arg(long, default_value = "quick")]
        level: String,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Data goes to stdout or `--out`, diagnostics to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Run { config, out } => {
            let cfg = load(&config)?;
            let line = format!("run --config {}", config.display());
            emit(&evaluate_config(&cfg, line)?, out.as_deref().or(cfg.out.as_deref()))?;
        }
        Command::Sweep { config, out } => {
            let cfg = load(&config)?;
            if cfg.sweeps.is_empty() {
                return Err(Error::config("sweep", "sweep needs at least one [[sweep]] block"));
            }
            let line = format!("sweep --config {}", config.display());
            emit(&evaluate_config(&cfg, line)?, out.as_deref().or(cfg.out.as_deref()))?;
        }
        Command::Figure {
            id,
            out,
            outer_positions,
            steps,
            overrides,
        } => {
            let id: FigureId = id.parse()?;
            let options = FigureOptions {
                steps,
                outer_positions,
                overrides: overrides.iter().map(|s| parse_override(s)).collect::<Result<_>>()?,
            };
            let mut line = format!("figure {id}");
            if let Some(n) = steps {
                line.push_str(&format!(" --steps {n}"));
            }
            if outer_positions {
                line.push_str(" --paper-positions");
            }
            for s in &overrides {
                line.push_str(&format!(" --set {s}"));
            }
            emit(&figure_dataset(id, &options, line)?, out.as_deref())?;
        }
        Command::Verify { level } => {
            let report = verify(level.parse()?);
            print!("{report}");
            return Ok(report.exit_code());
        }
    }
    Ok(0)
}

fn load(path: &Path) -> Result<RunConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

fn parse_override(s: &str) -> Result<(Param, f64)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::config("set", format!("expected KEY=VALUE, got `{s}`")))?;
    let param: Param = k.trim().parse()?;
    let value = v
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::config(param.key(), format!("`{v}` is not a number")))?;
    Ok((param, value))
}

/// Evaluates a configuration: its sweep grid, or the single point when it
/// has no sweep blocks.
pub fn evaluate_config(cfg: &RunConfig, command: String) -> Result<Dataset> {
    let table = if cfg.sweeps.is_empty() {
        let eval = cfg.spec.evaluate()?;
        SweepTable {
            columns: cfg.spec.output_columns().into_iter().map(String::from).collect(),
            rows: vec![eval.values],
            unstable_points: usize::from(!eval.stable),
        }
    } else {
        sweep(&cfg.spec, &cfg.sweeps)?
    };
    let mut effective = cfg.clone();
    effective.out = None;
    Ok(Dataset::from_table(command, &cfg.spec.name(), render_config(&effective), table))
}

fn emit(dataset: &Dataset, out: Option<&Path>) -> Result<()> {
    let csv = dataset.to_csv();
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().lock().write_all(csv.as_bytes())?,
    }
    Ok(())
}
