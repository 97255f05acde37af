//! Command-line front end for the optomechanical photon-router model.
//!
//! Subcommands: `spectrum`, `sweep`, `stability`, `route`. Results go to
//! stdout or `--out` as CSV or JSON. Exit codes: 0 success, 1 output I/O
//! failure, 2 invalid input, 3 unstable operating point, 4 numerical failure.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::{Format, GridSpec, RunConfig, SweepParam};
pub use crate::error::{CliError, ExitStatus};

#[derive(Debug, Parser)]
#[command(
    name = "optorouter",
    version,
    about = "Spectra and routing figures of an optomechanical single-photon router"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat JSON configuration file; flags below override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Control power [W].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub power: Option<f64>,

    /// Membrane bath temperature [K].
    #[arg(long = "temp", global = true, allow_hyphen_values = true)]
    pub temp: Option<f64>,

    /// Frequency grid `lo:hi:n` in units of ω_m.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid: Option<String>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reflection, transmission and noise spectra on the grid.
    Spectrum,
    /// One spectrum block per value of a swept parameter.
    Sweep {
        /// Parameter to sweep.
        #[arg(long, value_enum)]
        sweep: Option<SweepParam>,
        /// Comma-separated values (W, K, or frequencies in config units).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
    },
    /// Roots of the characteristic denominator and the stability verdict.
    Stability,
    /// Band-integrated routing probabilities and noise leaks.
    Route,
}

impl Cli {
    /// Defaults, then the config file, then command-line flags.
    pub fn resolve_config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(p) = self.power {
            cfg.power = p;
        }
        if let Some(t) = self.temp {
            cfg.temperature = t;
        }
        if let Some(g) = &self.grid {
            cfg.grid = GridSpec::parse(g)?;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        if let Command::Sweep { sweep, values } = &self.command {
            if let Some(s) = sweep {
                cfg.sweep_param = Some(*s);
            }
            if let Some(v) = values {
                cfg.sweep_values = v.clone();
            }
        }
        Ok(cfg)
    }

    pub fn execute(&self) -> Result<(RunConfig, commands::Rendered), CliError> {
        let cfg = self.resolve_config()?;
        let rendered = match self.command {
            Command::Spectrum => commands::spectrum(&cfg)?,
            Command::Sweep { .. } => commands::sweep(&cfg)?,
            Command::Stability => commands::stability(&cfg)?,
            Command::Route => commands::route(&cfg)?,
        };
        Ok((cfg, rendered))
    }
}

fn emit(cfg: &RunConfig, body: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::InvalidInput.code()
            } else {
                0
            };
        }
    };
    let outcome = cli.execute().and_then(|(cfg, rendered)| {
        emit(&cfg, &rendered.body)?;
        Ok(rendered.status)
    });
    match outcome {
        Ok(status) => status.code(),
        Err(err) => {
            eprintln!("error: {err}");
            err.status().code()
        }
    }
}
