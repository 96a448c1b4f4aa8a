use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("shape mismatch: expected {expected:?}, got {actual:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("zero entry at ({row}, {col})")]
    ZeroEntry { row: usize, col: usize },

    #[error("value {value} is not unit-modulus (| |z| - 1 | = {defect:e})")]
    NotUnimodular { value: String, defect: f64 },

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("alpha outside region: {0}")]
    OutsideRegion(String),

    #[error("quadruple violates the phi-sum condition: |phi[x,y] + phi[u,v]| = {0:e}")]
    QuadrupleCondition(f64),

    #[error("matrix is not unitary within tolerance (residual {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not 2-circulant within tolerance (defect {0:e})")]
    NotTwoCirculant(f64),

    #[error("block diagonalization leaked {0:e} off the diagonal")]
    DiagonalizationLeak(f64),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
