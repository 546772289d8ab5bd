use std::io;
use std::path::Path;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: io::Error },
    #[error(transparent)]
    Domain(#[from] kgt_core::Error),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    pub fn input(path: &Path, message: impl ToString) -> Self {
        CliError::Input {
            path: path.display().to_string(),
            message: message.to_string(),
        }
    }

    /// 0 success, 1 verification failure, 2 usage or input error,
    /// 3 domain error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Usage(_) | CliError::Input { .. } | CliError::Output { .. } => 2,
            CliError::Domain(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
