use thiserror::Error;

/// Errors raised by the library's algebraic and numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A coordinate or parameter left the region where 1 + γx > 0.
    #[error("domain violation: {0}")]
    Domain(String),

    /// A grid is too small or malformed for the requested stencil.
    #[error("grid error: {0}")]
    Grid(String),

    /// Array lengths do not match.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// An input violated a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An iterative routine failed to converge or produced non-finite values.
    #[error("numerics failure: {0}")]
    Numerics(String),
}

pub type Result<T> = std::result::Result<T, Error>;
