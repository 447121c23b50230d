use thiserror::Error;

/// Errors raised by the operator algebra, state constructors and correlation measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("bad weights: {0}")]
    BadWeights(String),

    #[error("basis vectors are not orthonormal (max deviation {deviation:e})")]
    NonOrthogonalBasis { deviation: f64 },

    #[error("basis is incomplete: {found} vectors for dimension {dim}")]
    IncompleteBasis { dim: usize, found: usize },

    #[error("rank {rank} outside 1..={max}")]
    BadRank { rank: usize, max: usize },

    #[error("expected {expected} measurement parameters, found {found}")]
    BadParameterCount { expected: usize, found: usize },

    #[error("probability vector not normalized (sum {sum})")]
    NotNormalized { sum: f64 },

    #[error("state has weight {weight:e} outside the support of the marginal")]
    SupportMismatch { weight: f64 },

    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("internal consistency check `{check}` failed (residual {residual:e})")]
    Inconsistent { check: &'static str, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
