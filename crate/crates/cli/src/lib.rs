//! Command-line front end for the cBV verification engine.
//!
//! Every command returns an [`Outcome`]: the text to print and an exit code that
//! depends only on the report. `0` means every asserted check passed, `1` a check
//! failed, `2` the input could not be parsed.

pub mod args;
pub mod commands;
pub mod file;

use std::fmt;

use serde::Serialize;

use cbv_core::report::{Report, Status};

pub use args::{Cli, Command, OutputFormat};
pub use commands::run;
pub use file::{Structure, StructureFile, Suite};

/// Seed used by every sampling step unless `--seed` or `CBV_SEED` is given.
pub const DEFAULT_SEED: u64 = 0x5eed_cb5;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_PARSE_ERROR: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input: arguments, structure files, tuples.
    Parse(String),
    Io(String),
    /// The engine rejected a well-formed request.
    Engine(cbv_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<cbv_core::Error> for CliError {
    fn from(e: cbv_core::Error) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => EXIT_PARSE_ERROR,
            CliError::Engine(_) => EXIT_CHECK_FAILED,
        }
    }
}

/// Printed output and exit code of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    pub fn from_reports(reports: &[Report], format: OutputFormat) -> Self {
        let passed = reports.iter().all(Report::passed);
        Outcome {
            stdout: render_reports(reports, format),
            stderr: String::new(),
            code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
        }
    }

    pub fn error(e: &CliError) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

#[derive(Serialize)]
struct Record<'a> {
    report: &'a str,
    check: &'a str,
    status: &'a str,
    detail: &'a str,
    witness: Option<&'a str>,
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Info => "info",
    }
}

/// Text reports one after another, or one JSON record per check.
pub fn render_reports(reports: &[Report], format: OutputFormat) -> String {
    let mut out = String::new();
    for r in reports {
        match format {
            OutputFormat::Text => out.push_str(&r.render()),
            OutputFormat::Structured => {
                for e in &r.entries {
                    let rec = Record {
                        report: &r.title,
                        check: &e.id,
                        status: status_word(e.status),
                        detail: &e.detail,
                        witness: e.witness.as_deref(),
                    };
                    out.push_str(&serde_json::to_string(&rec).expect("records serialize"));
                    out.push('\n');
                }
            }
        }
    }
    out
}
