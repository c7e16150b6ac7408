//! Command-line front end and file formats for `cesaro-core`.
//!
//! [`app::run`] parses arguments, runs one command and returns the process
//! exit code, so the binary and the integration tests share one path.

pub mod app;
pub mod config;
pub mod output;
pub mod source;
pub mod studies;
pub mod suites;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("bad series source: {0}")]
    Source(String),
    #[error(transparent)]
    Core(#[from] cesaro_core::Error),
    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}
