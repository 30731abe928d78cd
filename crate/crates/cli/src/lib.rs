//! Library half of the `crn` command: argument definitions, report types
//! and the command implementations. `main.rs` only prints and exits.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use commands::{run, run_args, Cli, Command, Format, Output};
pub use error::CliError;
