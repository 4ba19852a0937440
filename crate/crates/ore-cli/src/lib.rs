//! Batch front end for exact Ore-extension computations: configuration
//! files, an expression parser, command dispatch and the bundled worked
//! examples with golden artifacts.

pub mod commands;
pub mod config;
mod corpus;
pub mod parse;

pub use commands::{run, Cli, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
