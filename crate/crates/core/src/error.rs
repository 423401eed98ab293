use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("token `{0}` has no generator index")]
    EmptyIndex(String),
    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("strand count mismatch: {left} vs {right}")]
    StrandCountMismatch { left: usize, right: usize },
    #[error("strand count must be at least 1")]
    NoStrands,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid arrow {from}>{to} on {n} strands")]
    InvalidArrow { from: usize, to: usize, n: usize },
    #[error("malformed input: {0}")]
    Format(String),
    #[error("move site not applicable: {0}")]
    InapplicableSite(String),
    #[error("rule does not match at position {0}")]
    PatternMismatch(usize),
    #[error("diagram is not pure")]
    NotPure,
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("distinguished boundary components coincide")]
    AmbiguousDistinguished,
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Format(err.to_string())
    }
}
