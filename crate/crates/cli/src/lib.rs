//! Subcommands of the `rcrsbg` binary as library functions.

pub mod error;
pub mod inspect;
pub mod manifest;
pub mod report;
pub mod run;
pub mod svg;

pub use error::CliError;
