//! Command-line front end: argument parsing, commands and run reports.

pub mod commands;
pub mod report;
pub mod tables;

pub use commands::{execute, run_from_args, Cli, CliError, Command};
pub use report::{Outcome, RunReport, RunStatus};
