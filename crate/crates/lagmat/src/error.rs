use thiserror::Error;

/// Failures that stop a command before any verdict; all map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] lagmat_core::Error),
    #[error("refused: {0}")]
    Refused(String),
}

pub type CliResult<T> = Result<T, CliError>;
