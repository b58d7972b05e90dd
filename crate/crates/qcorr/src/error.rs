use thiserror::Error;

/// Errors raised by state construction, measurements, channels, and the
/// correlation pipeline. Numerical tolerances behind the physics checks are
/// documented on the constructors that enforce them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has size {size}, expected {expected} for dimensions {dim_a}x{dim_b}")]
    SizeMismatch {
        size: usize,
        expected: usize,
        dim_a: usize,
        dim_b: usize,
    },

    #[error("operands have incompatible dimensions: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: max |M - M^dag| = {residual:.3e}")]
    NotHermitian { residual: f64 },

    #[error("trace must be 1, got {trace}")]
    NotUnitTrace { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("probabilities must be nonnegative and sum to 1, got sum {sum}")]
    InvalidProbabilities { sum: f64 },

    #[error("rank {rank} is outside 1..={dim}")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error("expected {expected} measurement parameters for dimension {dim}, got {got}")]
    WrongParameterCount {
        expected: usize,
        got: usize,
        dim: usize,
    },

    #[error("matrix is not unitary: max |U^dag U - I| = {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("Kraus operators do not preserve trace: max |sum K^dag K - I| = {residual:.3e}")]
    NotTracePreserving { residual: f64 },

    #[error("parameter {value} is outside [0, 1]")]
    ParameterOutOfRange { value: f64 },

    #[error("infinite distance attached to outcome probability {probability:.3e}")]
    InfiniteDistanceTerm { probability: f64 },

    #[error("objective returned a non-finite value during optimization")]
    NonFiniteObjective,
}

pub type Result<T> = std::result::Result<T, Error>;
