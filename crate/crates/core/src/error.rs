use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("polynomial is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error(
        "defining ideal has a generator of degree {degree} ({poly}); presentations must be minimal"
    )]
    LinearGenerator { degree: u32, poly: String },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("ring is not Artinian within degree {0}")]
    NotArtinian(i32),
}

pub type Result<T> = std::result::Result<T, Error>;
