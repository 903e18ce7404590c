use thiserror::Error;

/// Errors produced by the group-algebra, embedding and experiment layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("signals live on different groups")]
    GroupMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("embedding collision at group element {0}")]
    EmbeddingCollision(usize),

    #[error("signal has support outside the declared region at element {0}")]
    SupportViolation(usize),

    #[error("spectrum is not restricted to the retained frequency set")]
    SpectrumOutsideSupport,

    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e}")]
    ImaginaryResidue { residue: f64, tolerance: f64 },

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that indicate a broken numerical contract rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ImaginaryResidue { .. } | Error::BoundViolated(_) | Error::EmbeddingCollision(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
