use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("algebra is not left-symmetric")]
    NotLeftSymmetric,

    #[error("not a Lie algebra: {0}")]
    NotALieAlgebra(String),

    #[error("bilinear form is not symmetric")]
    AsymmetricForm,

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("invalid catalog parameter: {0}")]
    InvalidParameter(String),

    #[error("linear map is not a classical r-matrix")]
    NotAnRMatrix,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("integration became unstable at t = {t}: |u| = {magnitude:e} at grid point {point}")]
    Unstable { t: f64, point: usize, magnitude: f64 },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
