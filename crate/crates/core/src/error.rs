use std::fmt;

/// Errors produced by group construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("group order (at least {order}) exceeds the configured cap of {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("subgroup is not normal in the parent group")]
    NotNormal,
    #[error("invalid semidirect action: {0}")]
    InvalidAction(String),
    #[error("group has no binary polyhedral quotients")]
    NoBpQuotients,
    #[error("rule conflict: {0}")]
    RuleConflict(String),
    #[error("known-status table, line {line}: {message}")]
    Table { line: usize, message: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by malformed user input rather than resource
    /// limits or internal failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidPermutation(_)
                | Error::InvalidParameter(_)
                | Error::Parse(_)
                | Error::InvalidAction(_)
                | Error::Table { .. }
        )
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Syntax or semantic error in a group expression, annotated with the byte
/// offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(input: &str, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "in {:?} at column {}: {}",
            self.input,
            self.position + 1,
            self.message
        )
    }
}

impl std::error::Error for ParseError {}
