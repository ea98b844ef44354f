use num_complex::Complex64;
use thiserror::Error;

/// Failures raised by the algebra, the transforms and the matrix calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular (pivot {pivot:e} below threshold {threshold:e})")]
    SingularMatrix { pivot: f64, threshold: f64 },
    #[error("matrix dimension {n} exceeds the eigenvalue cap {cap}")]
    DimensionTooLarge { n: usize, cap: usize },
    #[error("no convergence after {iterations} iterations (best residual {residual:e})")]
    ConvergenceFailure { iterations: usize, residual: f64 },
    #[error("w = {w} is not in the sample set")]
    SampleMiss { w: Complex64 },
    #[error("w = {w} is a critical value (|p'| = {derivative:e} at a fiber point)")]
    CriticalValue { w: Complex64, derivative: f64 },
    #[error("operands belong to different algebra contexts")]
    ContextMismatch,
    #[error("element is not invertible: Gelfand transform {value} at z = {witness}")]
    NotInvertible { witness: Complex64, value: Complex64 },
    #[error("overflow in repeated squaring at k = {k}")]
    Overflow { k: usize },
    #[error("polynomial is not simplifying: derivative of order {order} at {alpha} is {value:e}")]
    NotSimplifying { alpha: Complex64, order: usize, value: f64 },
    #[error("centers are not distinct (separation {separation:e})")]
    CentersDegenerate { separation: f64 },
    #[error("no constant shift with simple roots found after {attempts} attempts")]
    NoSimpleShiftFound { attempts: usize },
    #[error("insufficient derivative data at {alpha}: need {needed}, got {got}")]
    InsufficientData { alpha: Complex64, needed: usize, got: usize },
}

impl Error {
    /// True for failures of the numerics (as opposed to malformed input).
    pub fn is_numerical(&self) -> bool {
        !matches!(
            self,
            Error::InvalidInput(_)
                | Error::DimensionMismatch { .. }
                | Error::ContextMismatch
                | Error::InsufficientData { .. }
                | Error::DimensionTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
