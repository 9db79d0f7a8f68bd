use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the approximation engine and its kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("linear algebra kernel failed: {0}")]
    KernelFailure(String),

    #[error("invalid support set: {0}")]
    InvalidSupport(String),

    #[error("function value at {point} is not finite ({value})")]
    NonFiniteSample { point: Complex64, value: Complex64 },

    #[error("no pole-free approximant was found")]
    NoValidApproximant,

    #[error("Lawson iteration broke down: {0}")]
    LawsonBreakdown(String),

    #[error("winding number unresolved: argument jump of {jump:.3} rad at index {index}")]
    UnresolvedWinding { index: usize, jump: f64 },

    #[error("degenerate error curve: {0}")]
    DegenerateCurve(String),

    #[error("malformed model: {0}")]
    Model(String),

    #[error("invalid options: {0}")]
    InvalidOptions(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
