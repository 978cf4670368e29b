use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch { expected: usize, found: usize, context: &'static str },

    #[error("matrix is not in the affine chart: first row must be exactly (1, 0, ..., 0)")]
    NotAffineChart,

    #[error("generators do not commute: worst commutator max-norm {worst:e} exceeds tolerance {tolerance:e} (pair {pair:?})")]
    NotAbelian { worst: f64, tolerance: f64, pair: (usize, usize) },

    #[error("normal form construction failed: {reason} (residual {residual:e})")]
    NormalFormFailure { reason: String, residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
