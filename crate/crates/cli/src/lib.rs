//! Front end for `mgslope`. [`run`] parses an argument vector, executes
//! the command and returns the exit code with the rendered output.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! domain errors.

pub mod args;
mod commands;
pub mod output;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use mgslope_core::Error;

pub use commands::APPENDIX_DIR_VAR;
use output::{render, OutputRecord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::TranscriptionMismatch { .. }
        | Error::AssemblyInvariantViolation { .. }
        | Error::DimensionCheckFailed { .. }
        | Error::ProportionalityFailed(_) => 1,
        _ => 2,
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok(report) => {
            let record = OutputRecord {
                command: report.command,
                inputs: report.inputs,
                results: report.results,
                format: cli.format,
            };
            Outcome {
                code: if report.ok { 0 } else { 1 },
                stdout: render(&record, &report.table, cli.decimal),
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: error_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
