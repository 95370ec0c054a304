use crate::lp::LpSolution;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("size guard violated: {0}")]
    Guard(String),

    #[error("cutting-plane loop did not converge within {rounds} rounds")]
    NonConvergence { rounds: usize, last: Box<LpSolution> },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::InvalidInput(_) | Error::Io(_) => 2,
            Error::Guard(_) => 3,
            Error::NonConvergence { .. } => 4,
            Error::Verification(_) | Error::Internal(_) => 5,
        }
    }
}
