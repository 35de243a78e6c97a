//! Command-line driver and explorer HTTP service.

pub mod args;
pub mod commands;
pub mod server;

pub use args::Cli;
pub use commands::{run, CliError, Status};
