//! `bdry-ext`: spectra, conversions, certificates, forms and oracle checks for
//! self-adjoint extensions of the Laplacian.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 on numerical failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use crate::commands::Invocation;
use crate::config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] bdry_ext_core::Error),
    #[error("configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !e.is_validation() => 2,
            CliError::Check(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Verb {
    Spectrum,
    Convert,
    CheckSa,
    Form,
    Oracle,
}

#[derive(Debug, Parser)]
#[command(name = "bdry-ext", version, about = "Self-adjoint extensions of the Laplacian on an interval or a disk")]
struct Args {
    #[arg(value_enum)]
    verb: Verb,
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for a random extension; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Omit the timestamp header line from CSV output.
    #[arg(long)]
    no_timestamp: bool,
    /// Extension matrices are given in raw L² boundary coordinates.
    #[arg(long)]
    raw_coords: bool,
}

fn run(args: Args) -> Result<(), CliError> {
    let inv = Invocation {
        config: RunConfig::load(&args.config)?,
        out: args.out,
        seed: args.seed,
        timestamp: !args.no_timestamp,
        raw_coords: args.raw_coords,
    };
    match args.verb {
        Verb::Spectrum => commands::spectrum(&inv),
        Verb::Convert => commands::convert(&inv),
        Verb::CheckSa => commands::check_sa(&inv),
        Verb::Form => commands::form(&inv),
        Verb::Oracle => commands::oracle(&inv),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bdry-ext: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
