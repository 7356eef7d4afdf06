//! `eqcdj`: sweeps over the ensemble Deutsch-Jozsa library with CSV output.
//!
//! Exit codes: 0 success, 1 I/O or verification failure, 2 parse or
//! validation error, 3 dimension cap exceeded, 4 grid or fit precondition.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Options;

#[derive(Parser)]
#[command(name = "eqcdj", version, about = "Deutsch-Jozsa on spin ensembles: simulations and closed-form sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Textbook qubit circuit over one or all oracles.
    QubitDj,
    /// Ensemble quantum mode with Method 1 or 2.
    Method,
    /// Overlap or error curves over a τ grid.
    Curves,
    /// Exponential fit of the maximal error against N.
    Fit,
    /// Signal under collective dephasing over a Γt grid.
    Decoherence,
    /// Check exp(-iH_f) against the oracle unitary.
    OracleVerify,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Cap(String),
    Precondition(String),
    Io(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Failed(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Precondition(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Cap(m) | CliError::Precondition(m) | CliError::Io(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<eqcdj::EqcError> for CliError {
    fn from(e: eqcdj::EqcError) -> Self {
        use eqcdj::EqcError as E;
        let msg = e.to_string();
        match e {
            E::CapExceeded { .. } => CliError::Cap(msg),
            E::Precondition(_) => CliError::Precondition(msg),
            E::Domain(_) | E::Validation(_) | E::Capability(_) => CliError::Validation(msg),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = cli.opts.resolve()?;
    let report = match cli.command {
        Command::QubitDj => commands::qubit_dj(&opts)?,
        Command::Method => commands::method(&opts)?,
        Command::Curves => commands::curves(&opts)?,
        Command::Fit => commands::fit(&opts)?,
        Command::Decoherence => commands::decoherence(&opts)?,
        Command::OracleVerify => commands::oracle_verify(&opts)?,
    };
    report.table.write(opts.out.as_deref())?;
    if let Some(script) = &opts.plot_script {
        output::write_plot_script(script, opts.out.as_deref(), report.plot)?;
    }
    if let Some(s) = report.summary {
        eprintln!("{s}");
    }
    report.status
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eqcdj: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
