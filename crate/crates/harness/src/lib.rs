//! Experiment harness for the aging SMS-EMOA. Runs seeded experiment grids
//! into resumable CSV files and backs the `agemoa` CLI.

use std::path::PathBuf;

pub mod algorithm;
pub mod bounds;
pub mod config;
pub mod experiment;
pub mod params;
pub mod presets;
pub mod records;
pub mod stats;
pub mod verify;

pub use algorithm::Algorithm;
pub use config::{Cell, ExperimentConfig, Overrides};
pub use experiment::{run_experiment, run_experiment_to};
pub use params::{aging_hypothesis_holds, default_parameters};
pub use records::RunRecord;
pub use stats::{summarize, CellSummary};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Csv { path: PathBuf, message: String },

    #[error("existing output does not match this configuration: {0}")]
    ResumeMismatch(String),

    #[error(transparent)]
    Core(#[from] agemoa_core::Error),
}
