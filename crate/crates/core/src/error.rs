use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A grid or run configuration is unusable.
    #[error("configuration error: {0}")]
    Config(String),

    /// A parameter leaves the admissible domain of the model.
    #[error("domain error: {0}")]
    Domain(String),

    /// Spectral reconstruction disagrees with itself beyond tolerance,
    /// usually a sign that the truncation is too aggressive.
    #[error("consistency error: {0}")]
    Inconsistent(String),

    /// The Picard map failed to contract at the given data size.
    #[error(
        "non-contraction: iteration diverged at data size {epsilon:.6e} \
         (difference ratio > 1 for {run} consecutive iterations)"
    )]
    NonContraction { epsilon: f64, run: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
