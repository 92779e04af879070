//! Batch front end: JSON experiment configs, flag overrides and the CSV/JSON
//! emitters used by the `surface-cnot` binary.

pub mod config;
pub mod experiments;
pub mod output;

pub use config::{Experiment, ExperimentConfig, Format};
pub use experiments::{run, Artifact, Cell, RunError};
