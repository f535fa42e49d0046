use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(asymspace_core::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Failed(asymspace_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Invalid(_) | CliError::Usage(_) => 2,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

/// Errors raised while running a command. Problems with the caller's
/// vectors count as invalid input.
impl From<asymspace_core::Error> for CliError {
    fn from(e: asymspace_core::Error) -> Self {
        use asymspace_core::Error as E;
        match e {
            E::DimensionMismatch { .. } | E::BadRational(_) | E::Malformed(_) => CliError::Invalid(e),
            other => CliError::Failed(other),
        }
    }
}
