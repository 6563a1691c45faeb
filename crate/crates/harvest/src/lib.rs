//! Batch runner around `harvest-core`: (ξ_x, ε_b) sweeps, the three-distance
//! figure with its regime labels, flux-bias tables and the feasibility
//! report.

#![deny(missing_docs)]

use std::path::{Path, PathBuf};

pub mod config;
pub mod output;
pub mod regimes;
pub mod sweep;

pub use config::{Engine, Grid, Overrides, SweepConfig};
pub use regimes::{classify_regimes, Regime, RegimeLabel, RegimeThresholds};
pub use sweep::{run_sweep, RunOptions, SweepRecord, SweepResult};

/// Process exit code for an invalid configuration.
pub const EXIT_CONFIG: i32 = 2;
/// Process exit code when at least one grid point failed.
pub const EXIT_POINT_FAILURE: i32 = 3;
/// Process exit code for file-system errors.
pub const EXIT_IO: i32 = 1;

/// Errors that end a run.
#[derive(Debug, thiserror::Error)]
pub enum HarvestError {
    /// The configuration is unusable.
    #[error("config error: {0}")]
    Config(String),
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
}

impl HarvestError {
    /// Wraps an IO error with its path.
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.to_path_buf(), source }
    }

    /// Exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarvestError::Config(_) => EXIT_CONFIG,
            HarvestError::Io { .. } => EXIT_IO,
        }
    }
}

/// Directory name of one ladder distance, e.g. `rho_0.3`.
pub fn distance_dir(distance: f64) -> String {
    format!("rho_{distance}")
}

/// Runs the sweep at every ladder distance, in ladder order.
pub fn run_ladder(config: &SweepConfig, options: &RunOptions) -> Result<Vec<SweepResult>, HarvestError> {
    config.validate()?;
    config.ladder.iter().map(|&d| run_sweep(&config.at_distance(d), options)).collect()
}
