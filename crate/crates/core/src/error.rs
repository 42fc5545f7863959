use thiserror::Error;

/// Errors reported by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated hypothesis of a constructive operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The input is too large for an exhaustive routine.
    #[error("capacity exceeded: {what} is {actual}, limit is {limit}{hint}")]
    Capacity {
        what: &'static str,
        actual: usize,
        limit: usize,
        hint: &'static str,
    },

    /// Malformed family text.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Checkpoint file is unreadable or belongs to a different configuration.
    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
