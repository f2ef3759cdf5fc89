use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid algebra document: {0}")]
    InvalidAlgebra(String),
    #[error("universe mismatch: {0} vs {1}")]
    UniverseMismatch(usize, usize),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("empty universe: at least one element is required")]
    EmptyUniverse,
    #[error("unknown type id {0:?}")]
    UnknownType(String),
    #[error("unknown atom id {0}")]
    UnknownAtom(usize),
    #[error("size {size} given for singleton type {ty:?} (must be 1)")]
    SingletonSize { ty: String, size: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
