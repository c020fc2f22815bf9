use thiserror::Error;

use crate::field::Level;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),

    #[error("level mismatch: expected {expected:?}, got {got:?}")]
    LevelMismatch { expected: Level, got: Level },

    #[error("code {code} is not an element of the {level:?} field (size {size})")]
    ElementOutOfRange { level: Level, code: u64, size: u64 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("scalar multiplier must be nonzero")]
    ZeroScalar,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial is reducible")]
    Reducible,

    #[error("element {0} is not primitive")]
    NotPrimitive(u32),

    #[error("subspaces belong to different field towers")]
    TowerMismatch,

    #[error("malformed subspace: {0}")]
    MalformedSubspace(String),

    #[error("operation needs {0}")]
    Precondition(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
