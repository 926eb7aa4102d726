//! File formats, instance generation, the acceptance harness and the
//! `lagmat` command line, on top of `lagmat-core`.

pub mod commands;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod harness;
pub mod io;

pub use error::{CliError, CliResult};
pub use io::{Instance, Kind};
