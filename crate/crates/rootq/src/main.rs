//! `rootq`: deterministic reports for quantum groups at roots of unity.
//!
//! Exit codes: 0 success, 1 validation error (usage on stderr), 2 internal
//! failure, including a verification that came out negative.

mod commands;
mod config;
mod output;
mod render;

use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use thiserror::Error;

use config::{Cli, RunConfig, HEIGHT_BUDGET_ENV};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<rootq_core::Error> for CliError {
    fn from(e: rootq_core::Error) -> Self {
        match e {
            rootq_core::Error::Consistency(_) => CliError::Internal(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = std::panic::catch_unwind(|| execute(&cli));
    match result {
        Ok(Ok(true)) => ExitCode::SUCCESS,
        Ok(Ok(false)) => {
            eprintln!("verification failed; see the report");
            ExitCode::from(2)
        }
        Ok(Err(CliError::Usage(msg))) => {
            eprintln!("error: {msg}\n");
            eprintln!("{}", Cli::command().render_usage());
            ExitCode::from(1)
        }
        Ok(Err(e @ CliError::Internal(_))) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}

/// Validate, compute, write; `Ok(false)` when a verification failed.
fn execute(cli: &Cli) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(&cli.command, std::env::var(HEIGHT_BUDGET_ENV).ok())?;
    let out = commands::run(&cfg)?;
    let report = output::report(&cfg, commands::spec_block(&out.spec), out.results);
    let text = output::render(&cfg, &report)?;
    output::emit(&cfg, &text)?;
    Ok(out.verified)
}
