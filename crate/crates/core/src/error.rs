use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameters outside the domain of an operation (e.g. `m > n`).
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    /// Text input that cannot be parsed, or a graph with a bad edge.
    #[error("malformed input: {0}")]
    MalformedInput(String),
    /// A well-formed value that violates an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A brute-force request above the configured size cap.
    #[error("resource limit: n = {n} exceeds the brute-force cap of {cap}")]
    ResourceLimit { n: usize, cap: usize },
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
