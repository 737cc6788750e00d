use thiserror::Error;

/// Errors produced by partitioning, sampling and measurement routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid hyperbox: {0}")]
    InvalidBox(String),

    #[error("invalid stratification: {0}")]
    InvalidStratification(String),

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A point that must lie inside a given box does not.
    #[error("point {index} lies outside its box in dimension {dim}")]
    PointOutsideBox { index: usize, dim: usize },

    /// A box of a retroactive partition holds points that agree in every
    /// coordinate and therefore cannot be separated.
    #[error("coincident points: a box holds points that agree in every coordinate")]
    CoincidentPoints,

    /// No perfect bin-to-stratum matching exists in some dimension.
    #[error(
        "latinization infeasible in dimension {dim}: maximum matching has size {matched} of {required}"
    )]
    LatinizationInfeasible {
        dim: usize,
        matched: usize,
        required: usize,
    },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
