use thiserror::Error;

/// Errors raised by the arithmetic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument must be nonzero")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Legendre exponent of {p} in {m}!: floor sum gives {floor_sum}, digit formula gives {digit_formula}")]
    LegendreMismatch {
        p: u64,
        m: u64,
        floor_sum: u64,
        digit_formula: u64,
    },
    #[error("S(1) convention must be 0 or 1, got {0}")]
    Convention(u64),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("value is zero and cannot be represented as a factored rational")]
    ZeroValue,
    #[error("barrier iteration did not converge after {iterations} Newton steps (r = {r:e})")]
    NoConvergence { iterations: usize, r: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
