use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires a type-A quiver")]
    WrongFamily,
    #[error("unknown arrow: {0}")]
    UnknownArrow(String),
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("ill-formed path: {0}")]
    IllFormedPath(String),
    #[error("quotient still nonzero at degree cap {cap}")]
    DimensionCapExceeded { cap: usize },
    #[error("not selfinjective basic: {0}")]
    NotSelfinjectiveBasic(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("arrow set is not a cut")]
    NotACut,
    #[error("cut is not invariant under the rotation")]
    NotInvariant,
    #[error("resolution did not terminate within {cap} steps")]
    CapExceeded { cap: usize },
    #[error("bad cut list: {0}")]
    BadCutSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
