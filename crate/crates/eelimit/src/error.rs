use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    DegenerateOptimum = 3,
    Io = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(eelimit_core::Error),

    #[error("{0}")]
    Degenerate(eelimit_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0} verification check(s) failed")]
    VerificationFailed(usize),
}

impl From<eelimit_core::Error> for CliError {
    fn from(err: eelimit_core::Error) -> Self {
        match err {
            eelimit_core::Error::DegenerateOptimum { .. } => CliError::Degenerate(err),
            other => CliError::Model(other),
        }
    }
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_status(&self) -> ExitStatus {
        match self {
            // Model errors here come from rejected user input.
            CliError::Usage(_) | CliError::Model(_) => ExitStatus::Usage,
            CliError::Degenerate(_) => ExitStatus::DegenerateOptimum,
            CliError::Io { .. } => ExitStatus::Io,
            CliError::VerificationFailed(_) => ExitStatus::VerificationFailed,
        }
    }
}
