use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, column: usize, message: String },

    #[error("invalid configuration at `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Model(#[from] gupnoise_core::Error),

    #[error("could not serialize {what}: {reason}")]
    Serialize { what: &'static str, reason: String },
}

impl CliError {
    pub fn validation(field: impl Into<String>, reason: impl ToString) -> Self {
        CliError::Validation { field: field.into(), reason: reason.to_string() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// Process exit status: 2 for configuration mistakes, 3 for IO and evaluation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } => 2,
            _ => 3,
        }
    }
}
