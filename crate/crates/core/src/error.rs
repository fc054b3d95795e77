use thiserror::Error;

/// Errors produced by the library.
///
/// `Argument` covers violated preconditions of an operation, `Capability`
/// covers inputs that are well formed but outside what an operation can
/// handle (a ground set above the canonicalization limit, a vertex pool over
/// the cap, a theorem hypothesis that does not hold).
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),

    #[error("capability error: {0}")]
    Capability(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
