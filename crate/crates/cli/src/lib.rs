//! Command-line front end: argument parsing, report rendering and exit codes.

pub mod config;
pub mod run;

pub use config::{Cli, Command};
pub use run::{execute, run, CliError, Report, RunConfig};
