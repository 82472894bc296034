//! File formats, Hasse diagrams, JSON reports and the command line for
//! `cobrouwer-core`.

pub mod cli;
pub mod dot;
mod error;
pub mod format;
pub mod report;

pub use error::{CliError, Result};
