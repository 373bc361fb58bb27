//! Command-line front end for `fheston-core`.
//!
//! Verbs: `cgf`, `price`, `smile`, `asymptote`, `simulate`, `ratefn` and
//! `verify`. Output is CSV with a header row, or a JSON array of objects
//! with the same field names (`--format json`). Exit codes: 0 on success,
//! 1 on numerical failure (moment explosion, quadrature, a failed
//! verification check), 2 on invalid input, with a JSON error object on
//! standard error.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
mod commands;
pub mod output;
pub mod parallel;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use fheston_core::Error as CoreError;

pub use args::{Cli, Command, Opts};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Numerical(String),
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::OutOfRange(_) | CoreError::NonFinite(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

fn report(err: &mut dyn Write, message: &str, code: i32) {
    let body = serde_json::json!({ "error": message, "exit_code": code });
    // nothing sensible to do if stderr itself is gone
    let _ = writeln!(err, "{body}");
}

/// Parse `argv` (including the program name) and execute.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            report(err, first.trim_start_matches("error: "), 2);
            return 2;
        }
    };
    match commands::execute(&cli) {
        Ok(outcome) => {
            let written = outcome.table.write(cli.opts.format(), out);
            if let Err(e) = written {
                report(err, &e.to_string(), 1);
                return 1;
            }
            if let Some(msg) = outcome.failure {
                report(err, &msg, 1);
                return 1;
            }
            0
        }
        Err(e) => {
            let code = e.exit_code();
            report(err, &e.to_string(), code);
            code
        }
    }
}
