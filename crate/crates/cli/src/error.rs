use fpdim_core::Error;

use crate::dsl::{BuildError, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },

    #[error(transparent)]
    Core(#[from] Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Core(e) => CliError::Core(e),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl CliError {
    /// 1 for bad input, 2 when a computation contradicts itself.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) | CliError::Core(Error::Inconsistent(_)) => 2,
            _ => 1,
        }
    }
}
