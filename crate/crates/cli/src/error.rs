// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use qcontext_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    Invariant(CoreError),

    #[error("malformed epsilon grid: {0}")]
    Grid(String),

    #[error("protocol failed: {0}")]
    Protocol(CoreError),

    #[error("search failed: {0}")]
    Search(CoreError),

    #[error("geometry failed: {0}")]
    Geometry(CoreError),

    #[error("cannot write output: {0}")]
    Output(std::io::Error),
}

impl CliError {
    /// Disjoint per error class; 1 is left for output failures.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Grid(_) => 4,
            CliError::Protocol(_) => 5,
            CliError::Search(_) => 6,
            CliError::Geometry(_) => 7,
            CliError::Output(_) => 1,
        })
    }
}
