use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("non-positive coefficient {coeff} for monomial {monomial}")]
    NonPositiveCoefficient { coeff: f64, monomial: String },

    #[error("variable count mismatch: {0}")]
    VariableMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension {dim} exceeds the exact geometry budget of {max}")]
    DimensionBudget { dim: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial is not elliptic")]
    NotElliptic,

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("no coordinate permutation realizes the face decomposition")]
    NoValidPermutation,

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("face is not compact: {0}")]
    NonCompactFace(String),

    #[error("pole multiplicity must be a positive integer, got {value} at {nu:?}")]
    NonIntegerMultiplicity { nu: Vec<u32>, value: f64 },

    #[error("Euler product does not converge: {0}")]
    NonConvergentProduct(String),

    #[error("series evaluation: {0}")]
    Series(String),

    #[error("no stable pole order up to {q_max}: {detail}")]
    NoStableOrder { q_max: u32, detail: String },

    #[error("prediction refused: {0}")]
    PredictionRefused(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
