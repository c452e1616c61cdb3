//! Library side of the `exqfi` binary: every subcommand renders its files in memory,
//! then [`manifest::write_run`] writes them together with a digest manifest.

pub mod args;
pub mod commands;
pub mod manifest;
pub mod presets;
pub mod table;

use std::fmt;

use anyhow::Result;

use args::{Cli, Command};
use manifest::{write_run, RunManifest};

/// Bad or missing flags; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "usage: {}", self.0)
    }
}

impl std::error::Error for UsageError {}

/// `--oracle` found a deviation above tolerance; maps to exit code 3. Outputs are still written.
#[derive(Debug)]
pub struct OracleMismatch {
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl fmt::Display for OracleMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "oracle deviation {:.3e} exceeds {:.1e}",
            self.max_deviation, self.tolerance
        )
    }
}

impl std::error::Error for OracleMismatch {}

pub fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

pub fn require_seed(cli_seed: Option<u64>, command: &str) -> Result<u64> {
    match cli_seed {
        Some(s) => Ok(s),
        None => usage(format!("`{command}` is stochastic and needs --seed")),
    }
}

pub fn run(cli: &Cli) -> Result<RunManifest> {
    if let Some(k) = cli.threads {
        if k == 0 {
            return usage("--threads must be positive");
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let (name, seed, output) = match &cli.command {
        Command::DimerSweep(a) => ("dimer-sweep", None, commands::dimer::sweep(a, cli.oracle)?),
        Command::ThermalHeatmap(a) => ("thermal-heatmap", None, commands::dimer::heatmap(a, cli.oracle)?),
        Command::Chain(a) => ("chain", None, commands::excitons::chain(a, cli.oracle)?),
        Command::Ring(a) => ("ring", None, commands::excitons::ring(a, cli.oracle)?),
        Command::Optimize(a) => {
            let seed = require_seed(cli.seed, "optimize")?;
            ("optimize", Some(seed), commands::excitons::optimize(a, seed, cli.oracle)?)
        }
        Command::Disorder(a) => {
            let seed = require_seed(cli.seed, "disorder")?;
            ("disorder", Some(seed), commands::disorder::run(a, seed, cli.oracle)?)
        }
        Command::Spectrum(a) => ("spectrum", None, commands::spectra::spectrum(a, cli.oracle)?),
        Command::Ingest(a) => ("ingest", None, commands::spectra::ingest(a, cli.oracle)?),
    };
    let manifest = write_run(&cli.out, name, seed, output)?;
    if let Some(o) = &manifest.oracle {
        if !o.passed() {
            return Err(OracleMismatch {
                max_deviation: o.max_deviation,
                tolerance: o.tolerance,
            }
            .into());
        }
    }
    Ok(manifest)
}
