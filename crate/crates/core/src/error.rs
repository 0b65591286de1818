use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("bad file format ({0})")]
    Format(String),

    #[error("declared {declared} samples but file holds {actual}")]
    LengthMismatch { declared: usize, actual: usize },

    #[error("non-finite values in {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("filter design is unstable ({0})")]
    UnstableFilter(String),

    #[error("no stimulus peaks detected")]
    NoPeaks,

    #[error("recording has {got} segments, at least {need} required")]
    TooFewSegments { got: usize, need: usize },

    #[error("matrix of {n} columns is too small for shrinkage (need n >= {min})")]
    MatrixTooSmall { n: usize, min: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty candidate set")]
    EmptyCandidates,

    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
