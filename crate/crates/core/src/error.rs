use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is rank deficient: rank {rank} < {cols} columns")]
    RankDeficient { rank: usize, cols: usize },

    #[error("enumeration of {needed} states exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generator set not closed under inverse: {0}")]
    ClosureViolation(String),

    #[error("graph is not regular: vertex {vertex} has degree {degree}, expected {expected}")]
    NonRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("word is not in Sigma(C_A, C_B)")]
    NotInSigma,

    #[error("chain is not in the image of the boundary map")]
    NotInImage,

    #[error("chain condition failed at face {face}, vertex {vertex}")]
    ChainCondition { face: usize, vertex: usize },

    #[error("{0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
