use thiserror::Error;

use crate::qsim::MAX_QUBITS;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..={max}", max = MAX_QUBITS)]
    QubitCount(usize),

    #[error("qubit index {qubit} out of range for a {n_qubits}-qubit state")]
    QubitIndex { qubit: usize, n_qubits: usize },

    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    SameQubit(usize),

    #[error("rotation angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("invalid probability mass function: {0}")]
    InvalidPmf(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid label permutation: {0}")]
    InvalidPermutation(String),

    #[error("init mode `{0}` is not a single Ry column and cannot be folded")]
    NotFoldable(&'static str),

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
