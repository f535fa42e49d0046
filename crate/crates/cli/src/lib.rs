//! Space files, built-in fixtures, command dispatch and SVG output for the
//! `asymspace` tool.

pub mod commands;
pub mod error;
pub mod fixtures;
pub mod render;
pub mod space;

pub use commands::{dd_budget_from_env, load_input, run_batch, run_command, Command, Format, Options, Outcome};
pub use error::CliError;
