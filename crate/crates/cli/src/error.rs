use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed arguments or unknown names.
    #[error("usage: {0}")]
    Usage(String),
    /// Well-formed arguments outside a function's domain.
    #[error("domain: {0}")]
    Domain(String),
    /// A verification suite found failing checks.
    #[error("{0} check(s) failed")]
    Failed(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Failed(_) | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

impl From<kempner::Error> for CliError {
    fn from(e: kempner::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
