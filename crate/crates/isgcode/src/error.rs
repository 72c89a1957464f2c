//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IsgError {
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("operator is not Hermitian: {0}")]
    NonHermitian(String),

    #[error("round {round} is not Abelian: {a} anticommutes with {b}")]
    NonCommutingRound { round: usize, a: String, b: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("schedule did not establish within {horizon} rounds")]
    NotEstablished { horizon: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("non-CSS measurement cannot be compiled to a diagram: {0}")]
    UnsupportedDiagram(String),

    #[error("tile validation failed: {0}")]
    TileValidation(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
