//! Library error type. CLI exit-code mapping lives in the binary crate.

/// Errors surfaced by the geometry kernel.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input is outside the mathematical domain of the operation (for
    /// example a distance query at a point where the formula degenerates).
    #[error("domain error: {0}")]
    Domain(String),

    /// The horizontal gradient vanishes (within `tol`) at the query point,
    /// so the horizontal unit normal and mean curvature are undefined there.
    #[error("characteristic point: |grad_0 u| = {norm:e} <= tol {tol:e}")]
    CharacteristicPoint { norm: f64, tol: f64 },

    /// Structurally invalid input (wrong arity, non-finite values, curves
    /// whose samples do not line up).
    #[error("invalid input: {0}")]
    Input(String),

    /// An iterative routine failed to locate or refine a root.
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
