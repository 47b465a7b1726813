//! Scenario files, report formats, SVG figures and the subcommands behind
//! the `quadcover` binary.

pub mod commands;
pub mod render;
pub mod report;
pub mod scenario;

use std::path::{Path, PathBuf};

use quadcover::PlanError;
use thiserror::Error;

/// Everything a subcommand can fail with. The exit code is fixed per variant.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("planning failed: {0}")]
    Planning(#[from] PlanError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } => 1,
            Self::Input(_) => 2,
            Self::Planning(_) => 3,
            Self::Verification(_) => 4,
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.to_path_buf(), source }
    }
}
