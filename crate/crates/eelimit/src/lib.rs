//! Std companion of `eelimit-core`: CSV output, plot scripts, the flat config file format and
//! the regression report behind `eelimit verify`.

pub mod config;
mod error;
pub mod plot;
pub mod table_io;
pub mod verify;

pub use error::{CliError, ExitStatus};
