use thiserror::Error;

/// Errors raised by the algebra constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {requested} exceeds the session degree cap {cap}")]
    DegreeCap { requested: usize, cap: usize },

    #[error("twisting index {index} is not defined (window {lo}..={hi})")]
    IndexOutOfWindow { index: i64, lo: i64, hi: i64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("arity mismatch: {maps} maps for a tensor of degree {degree}")]
    ArityMismatch { maps: usize, degree: usize },

    #[error("homogeneity degree mismatch: m = {0} vs m = {1}")]
    HomogeneityMismatch(usize, usize),

    #[error("scalars from different fields were combined")]
    FieldMismatch,

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("duplicate or invalid generator name `{0}`")]
    BadGenerator(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("twisting-window mismatch")]
    WindowMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
