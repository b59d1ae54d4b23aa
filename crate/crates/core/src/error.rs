use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("unknown builtin quasi-order `{0}`")]
    UnknownBuiltin(String),

    #[error("ordinal not in Cantor normal form: {0}")]
    NotNormalForm(String),

    #[error("term invariant violated: {0}")]
    InvariantViolation(String),

    #[error("bad chain length {0}")]
    BadLength(usize),

    #[error("mind-change tail must start with a natural number, found pass")]
    BadHead,

    #[error("selector {index} out of range (only {len} branches)")]
    InvalidSelector { index: u64, len: usize },

    #[error("term contains a jump label that cannot be evaluated: {0}")]
    JumpTermNotEvaluable(String),

    #[error("no reduction: source is not below target")]
    NotReducible,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
