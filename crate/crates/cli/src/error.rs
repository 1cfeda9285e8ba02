use std::path::PathBuf;

use convgoppa::ErrorKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] convgoppa::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: cannot parse: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for bad input, 3 for an exhausted budget, 4 for a failed internal
    /// cross-check, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Budget => 3,
                ErrorKind::Internal => 4,
                ErrorKind::Io => 1,
            },
            CliError::Io { .. } => 1,
            CliError::Parse { .. } | CliError::Usage(_) => 2,
        }
    }
}

pub fn core<E: Into<convgoppa::Error>>(e: E) -> CliError {
    CliError::Core(e.into())
}
