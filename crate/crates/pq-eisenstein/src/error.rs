use thiserror::Error;

/// Errors raised by the exact and numeric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("arguments {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("({0}, {1}) is not a point of P1(Z/{2}Z)")]
    NotProjectivePoint(i64, i64, u64),
    #[error("invalid level: {0}")]
    InvalidLevel(String),
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(i64, u64),
    #[error("matrix {0} is not in {1}")]
    NotInSubgroup(String, String),
    #[error("matrix {0} has odd b + d - a - c")]
    NotConjugable(String),
    #[error("determinant of {0} is not 1")]
    NotUnimodular(String),
    #[error("exceptional pair for x = {x}, k = {k} is not instantiable (gcd {gcd})")]
    NotInstantiable { x: u64, k: i64, gcd: i64 },
    #[error("t(gamma) = 0 for {0}")]
    DegenerateTrace(String),
    #[error("{0}/{1} is not a reduced cusp")]
    NotACusp(String, String),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u64, u64),
    #[error("numeric error bound {bound:e} exceeds tolerance {tol:e}")]
    PrecisionFailure { bound: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
