//! Library side of the `ufalab` binary: commands, reports and reproduction suites.

pub mod commands;
pub mod oracle;
pub mod report;
pub mod suites;

pub use commands::{exit_code, CliError};
