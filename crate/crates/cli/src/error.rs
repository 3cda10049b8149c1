use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the command-line tool, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
    #[error(transparent)]
    Core(#[from] dsmt::Error),
    #[error("{failed} of {total} rule runs failed")]
    TaskFailures { failed: usize, total: usize },
}

impl CliError {
    /// 2 for unreadable or invalid input, 3 for rule failures, 4 for resource limits.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Validation(_) => 2,
            CliError::Core(dsmt::Error::FrameTooLarge { .. }) => 4,
            CliError::Core(dsmt::Error::Parse { .. }) => 2,
            CliError::Core(_) | CliError::TaskFailures { .. } => 3,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
