use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("direction {0:?} is not a unit vector (norm {1})")]
    NonUnitDirection([f64; 3], f64),

    #[error("{qubits} qubits exceeds the dense operator cap of {cap}")]
    DimensionOverflow { qubits: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("expectation has imaginary residual {0:e}; operator is not Hermitian")]
    NonHermitianResult(f64),

    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("value {0} is outside [-1, 1]")]
    OutOfRange(f64),

    #[error("enumerating {n} qubits exceeds the cap of {cap} (4^n strategies)")]
    EnumerationTooLarge { n: usize, cap: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("observables are not anticommuting: inner product {0}")]
    NotAnticommuting(f64),

    #[error("cross product at qubit {site} has norm {norm}, expected 1")]
    DegenerateCross { site: usize, norm: f64 },

    #[error("amplitudes are not balanced: |a| = {0}, |b| = {1}")]
    NotBalanced(f64, f64),

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("invalid qubit count {n}: {reason}")]
    InvalidQubitCount { n: usize, reason: &'static str },
}
