//! Library side of the `treewass` command: sweeps, suites and reports.

pub mod commands;
pub mod error;
pub mod parse;
pub mod report;
pub mod suites;
pub mod sweep;

pub use error::{CliError, Result};
pub use report::{Provenance, Record, RunReport};
