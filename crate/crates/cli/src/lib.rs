//! Configuration, file formats and subcommands of the `qtraj` tool.

pub mod commands;
pub mod config;
pub mod io;

use std::path::PathBuf;

pub use config::{parse_config, ConfigError, HistogramSettings, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
    #[error("trajectory id {trajectory_id} appears in inputs {first} and {second}")]
    IdCollision {
        trajectory_id: u64,
        first: usize,
        second: usize,
    },
    #[error("{0}")]
    UnknownCurve(String),
    #[error("{0}")]
    Usage(String),
    #[error("worker pool: {0}")]
    Threads(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] qtraj_core::Error),
}
