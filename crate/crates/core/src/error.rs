use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid automaton: {0}")]
    InvalidDfa(String),

    #[error("letter '{0}' is not part of the alphabet")]
    UnknownLetter(String),

    #[error("letter '{0}' has no image under the letter map")]
    UnmappedLetter(String),

    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("malformed token '{0}'")]
    MalformedToken(String),

    #[error("period of an eventually periodic sequence must be nonempty")]
    EmptyPeriod,

    #[error("state cap exceeded: {needed} states needed, cap is {cap}")]
    CapExceeded { needed: u128, cap: usize },

    #[error("root scan bound {needed} exceeds the configured limit {limit}")]
    BoundOverflow { needed: u128, limit: u128 },

    #[error("position {position} out of range 1..={arity}")]
    PositionOutOfRange { position: usize, arity: usize },

    #[error("modifier is not friendly: {0}")]
    NotFriendly(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Whether the error came from hitting a configured resource limit.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::BoundOverflow { .. }
        )
    }
}
