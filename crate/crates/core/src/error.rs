use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Usage(String),
    #[error("polytope closure is unbounded")]
    Unbounded,
    #[error("symbolic-only regime: {0}")]
    SymbolicOnly(String),
    #[error("cohomology model violation: {0}")]
    ModelViolation(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}
