use thiserror::Error;

/// Errors raised by the library and mapped onto process exit codes by the CLI.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polytope is not full-dimensional (affine rank {rank} in dimension {dim})")]
    NotFullDimensional { rank: usize, dim: usize },

    #[error("unsupported dimension {0} (expected 1..=6)")]
    Dimension(usize),

    #[error("points have inconsistent dimensions")]
    MixedDimensions,

    #[error("polytope is not reflexive: {0}")]
    NotReflexive(String),

    #[error("fan is not simplicial: {0}")]
    NotSimplicial(String),

    #[error("Lefschetz range: the Hodge formulas need n >= 4, got n = {0} (use --force to evaluate anyway)")]
    LefschetzRange(usize),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid weights: {0}")]
    Weights(String),

    #[error(
        "rank stayed below the expected value on every draw (rank {rank}, expected {expected})"
    )]
    NonGenericDraws { rank: usize, expected: usize },

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotReflexive(_) => 2,
            Error::NotSimplicial(_) => 3,
            Error::Parse { .. } | Error::Weights(_) | Error::Io(_) => 4,
            Error::LefschetzRange(_) | Error::Hypothesis(_) => 5,
            Error::NotFullDimensional { .. } | Error::Dimension(_) | Error::MixedDimensions => 4,
            Error::NonSquare { .. } | Error::NonGenericDraws { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
