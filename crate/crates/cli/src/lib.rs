//! Library side of the `qpp` command-line tool: atlas tabulation, figure
//! rendering, and the subcommand bodies (each returns its output text so it
//! can be tested without spawning a process).

pub mod atlas;
pub mod commands;
pub mod encode;
pub mod render;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qpp_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Process exit status for a successful run that reports a negative result.
pub const EXIT_NEGATIVE: i32 = 1;
/// Process exit status for bad input or I/O failure.
pub const EXIT_USAGE: i32 = 2;

/// Text produced by a subcommand and the exit status it asks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: i32,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}
