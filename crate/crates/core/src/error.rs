use thiserror::Error;

/// Errors raised by the spectral, Coxeter, Penner, topology and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has a negative entry at ({row}, {col})")]
    NotNonnegative { row: usize, col: usize },

    #[error("polynomial has no real root")]
    NoRealRoot,

    #[error("lambda + 1/lambda = {0} has no real solution (need s >= 2)")]
    NoRealSolution(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("graph is not an affine Dynkin diagram")]
    NotAffine,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{side} index {index} out of range (have {len})")]
    IndexOutOfRange {
        side: &'static str,
        index: usize,
        len: usize,
    },

    #[error("invalid twist word: {0}")]
    InvalidWord(String),

    #[error("pattern too large for exhaustive word search ({size} curves, limit {limit})")]
    TooLarge { size: usize, limit: usize },

    #[error("invalid combinatorial map: {0}")]
    InvalidMap(String),

    #[error("surviving graph not in any admissible family: {0}")]
    UnclassifiedSurvivor(String),

    #[error("invalid genus {0} (need g >= 1)")]
    InvalidGenus(u32),

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
