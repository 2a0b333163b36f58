use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has zero dimension")]
    EmptyMatrix,

    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {found}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max asymmetry {asymmetry:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix function is not finite at eigenvalue {eigenvalue}")]
    FunctionOverflow { eigenvalue: f64 },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("basis dimension must be at least 2, got {0}")]
    BasisTooSmall(usize),

    #[error("{0} basis defines only p squared, a first-order momentum operator is required")]
    MissingMomentum(&'static str),

    #[error("n = {n} is not a bound state for A = {a} (requires 0 <= n < A)")]
    NotBoundState { n: usize, a: f64 },

    #[error("hierarchy level {level} exceeds floor(A) = {max} for A = {a}")]
    HierarchyTooDeep { level: usize, max: usize, a: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("state norm {norm} differs from 1")]
    NotNormalized { norm: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
