use thiserror::Error;

/// Errors raised by the core operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("subset {0} is cyclic; a noncyclic subset is required")]
    CyclicSubset(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no cone of the noncrossing fan contains the point")]
    NoCone,
    #[error("decomposition is not unique: {0}")]
    AmbiguousDecomposition(String),
    #[error("matroid has a loop at {0}")]
    Loop(usize),
    #[error("computation exceeded its time budget of {0:?}")]
    BudgetExceeded(std::time::Duration),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
