use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid dimensions {rows}x{cols}")]
    InvalidDimensions { rows: usize, cols: usize },

    #[error("depth must be at least 1")]
    InvalidDepth,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("bit-string length {got} does not match {expected} qubits")]
    BitStringLength { expected: usize, got: usize },

    #[error("invalid bit-string {0:?}")]
    InvalidBitString(String),

    #[error("inconsistent endpoints: {0}")]
    InconsistentEndpoints(String),

    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error(
        "memory budget exceeded at elimination step {step}: rank-{rank} tensor needs {required} bytes, budget {budget}"
    )]
    BudgetExceeded {
        step: usize,
        rank: usize,
        required: u64,
        budget: u64,
    },

    #[error("{what} limit exceeded: {got} > {cap}")]
    CapExceeded { what: &'static str, got: usize, cap: usize },

    #[error("boundary violation: {0}")]
    BoundaryViolation(String),

    #[error("non-positive probability {value} at sample {index}")]
    NonPositiveProbability { index: usize, value: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("empty input")]
    Empty,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
