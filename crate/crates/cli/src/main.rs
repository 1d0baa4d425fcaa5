//! `contactlab`: flows, scaling-factor-1 sets, sweeps and certification.
//!
//! Exit codes: 0 when every check passes, 1 when a check is unmet, 2 for a
//! bad configuration, 3 when a pipeline stage fails.

mod commands;
mod config;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use contactlab::construction::CertifyParams;

use config::{
    CertifyFlags, FlowConfig, FlowFlags, SigmaConfig, SigmaFlags, SweepConfig, SweepFlags,
};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Stage(contactlab::Error),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Stage(e.into())
    }
}

pub enum Outcome {
    Pass,
    Unmet,
}

#[derive(Parser)]
#[command(
    name = "contactlab",
    version,
    about = "Cut-off contact flows on the round sphere"
)]
struct Cli {
    /// Output directory.
    #[arg(long, env = "CONTACTLAB_OUT", default_value = "out", global = true)]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate trajectories and draw a phase portrait.
    Flow {
        /// JSON config; flags override its values.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: FlowFlags,
    },
    /// Extract the scaling-factor-1 set for one or more values of delta.
    Sigma {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: SigmaFlags,
    },
    /// Run the full construction and check the three certification criteria.
    Certify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: CertifyFlags,
    },
    /// Oscillation bounds over a grid of delta and kappa widths.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: SweepFlags,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let out = cli.out;
    match cli.command {
        Command::Flow { config, flags } => {
            let mut cfg: FlowConfig = config::load(config.as_deref())?;
            cfg.apply(flags);
            commands::flow(&cfg, &out)
        }
        Command::Sigma { config, flags } => {
            let mut cfg: SigmaConfig = config::load(config.as_deref())?;
            cfg.apply(flags);
            commands::sigma(&cfg, &out)
        }
        Command::Certify { config, flags } => {
            let mut params: CertifyParams = config::load(config.as_deref())?;
            config::apply_certify(&mut params, flags);
            commands::certify(&params, &out)
        }
        Command::Sweep { config, flags } => {
            let mut cfg: SweepConfig = config::load(config.as_deref())?;
            cfg.apply(flags);
            commands::sweep(&cfg, &out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Unmet) => ExitCode::from(1),
        Err(CliError::Config(msg)) => {
            eprintln!("error: invalid configuration: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Stage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
