use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two monomials (or a monomial and an ideal) disagree on the number of variables.
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    /// An operation was called outside its domain (zero ideal, wrong ambient n, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed text or JSON input. `position` is a byte offset into the input.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// The Taylor complex would need more than `cap` generators.
    #[error("capacity exceeded: {generators} generators, cap is {cap}")]
    Capacity { generators: usize, cap: usize },

    /// A chain complex handed to the cancellation engine is not a valid complex.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// A mathematical contract that must always hold was observed to fail.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }
}
