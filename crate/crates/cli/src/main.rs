//! `backreaction`: survival curves of a reversibly bound pair as CSV.

mod commands;
mod config;

use std::io;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::Options;

#[derive(Parser, Debug)]
#[command(name = "backreaction", version, about = "Survival of a reversibly bound pair in two dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate S(t) on a log grid with one evaluation route
    Survival(Options),
    /// Evaluate every applicable route on the grid and report the largest discrepancies
    Compare(Options),
    /// Draw residence times and compare their survival with the exact law
    SamplePsi(Options),
}

#[derive(Debug)]
pub enum CliError {
    Lib(backreaction::Error),
    Usage(String),
    Io(io::Error),
    /// A cross-check exceeded its tolerance.
    Check(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use backreaction::Error;
        match self {
            CliError::Lib(Error::Accuracy(_) | Error::Singularity(_)) | CliError::Check(_) => 2,
            CliError::Lib(Error::Domain(_) | Error::Branch(_)) | CliError::Usage(_) | CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl From<backreaction::Error> for CliError {
    fn from(e: backreaction::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Survival(o) => o.resolve().and_then(|c| commands::survival(&c)),
        Command::Compare(o) => o.resolve().and_then(|c| commands::compare(&c)),
        Command::SamplePsi(o) => o.resolve().and_then(|c| commands::sample_psi(&c)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("backreaction: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
