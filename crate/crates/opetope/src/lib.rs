//! File formats and the command-line front end for `opetope-core`.

pub mod cli;
pub mod formats;

use thiserror::Error;

/// Failures of a command, each with its own exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) | CliError::Io(_) => 4,
        }
    }
}

impl From<opetope_core::Error> for CliError {
    fn from(e: opetope_core::Error) -> Self {
        use opetope_core::Error as E;
        match e {
            E::Precondition(m) => CliError::Precondition(m),
            E::NotInvertible(_) => CliError::Precondition(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}
