use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("matrix is singular")]
    Singular,

    #[error("element leaves the algebra (re-expansion residual {residual:e})")]
    LeavesAlgebra { residual: f64 },

    #[error("basis does not close under the commutator (residual {residual:e})")]
    NotClosed { residual: f64 },

    #[error("tensor is not antisymmetric (residual {residual:e})")]
    NotAntisymmetric { residual: f64 },

    #[error("polynomial degree {degree} exceeds bound {max}")]
    DegreeOverflow { degree: usize, max: usize },

    #[error("malformed file: {0}")]
    Format(#[from] serde_json::Error),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
