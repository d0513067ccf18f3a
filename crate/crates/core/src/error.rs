use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied argument violates an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("variable arity mismatch: {left} y-variables vs {right}")]
    ArityMismatch { left: usize, right: usize },

    /// An internal invariant failed; indicates a bug rather than bad input.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Process exit status: 2 for bad input, 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::ArityMismatch { .. } => 2,
            Error::Invariant(_) => 1,
        }
    }
}
