//! Command-line front end for `selfsim-heat`: JSON run configurations,
//! named presets for the published figures, and CSV/JSON artifacts.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod problem;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use config::RunConfig;
pub use error::{CliError, CliResult};
