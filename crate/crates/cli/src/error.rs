use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The configuration does not follow the schema or names missing files.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error(transparent)]
    Solver(#[from] selfsim_heat::Error),

    #[error("mismatched problems: {0}")]
    MismatchedProblem(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Config(_) => "config",
            Self::Io(_) => "io",
            Self::Solver(_) => "solver",
            Self::MismatchedProblem(_) => "mismatched_problem",
        }
    }

    /// 2 for configuration and file problems, 1 for everything downstream.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::Io(_) | Self::MismatchedProblem(_) => 2,
            Self::Solver(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": "error",
            "error": { "kind": self.kind(), "message": self.to_string() },
        })
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Config(e.to_string())
    }
}
