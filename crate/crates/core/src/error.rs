use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configured size cap was exceeded. Never a silent truncation.
    #[error("{what} too large: {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("not a projector: {0}")]
    NotProjector(String),

    #[error("no convergence after {iterations} iterations: {detail}")]
    NoConvergence { iterations: usize, detail: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A certificate, representation or protocol failed verification.
    #[error("verification failed: {0}")]
    Verification(String),

    /// An invariant that should be impossible to break for verified input.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
