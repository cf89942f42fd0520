//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by geometric constructions, operators, and solvers.
#[derive(Debug, Clone, Error)]
pub enum GeomError {
    /// An input vector or matrix had a dimension outside the supported range
    /// or inconsistent with its peers.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// A numeric entry was NaN or infinite.
    #[error("non-finite value: {0}")]
    NonFinite(String),
    /// A matrix claimed to be a rotation failed orthogonality or orientation
    /// validation.
    #[error("not a rotation: {0}")]
    NotARotation(String),
    /// Too few points, or points too degenerate, for the requested hull.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// An operation required a full-dimensional body and received a
    /// lower-dimensional one.
    #[error("lower-dimensional body: {0}")]
    LowerDimensional(String),
    /// A parameter was outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A measure failed the solvability conditions of the Minkowski problem.
    #[error("measure conditions violated: {0}")]
    ConditionsViolated(String),
    /// A kernel failed its declared parity.
    #[error("kernel parity violation: {0}")]
    KernelParity(String),
    /// The Newton iteration failed to converge.
    #[error("solver did not converge: {0}")]
    NoConvergence(String),
    /// An extracted component failed the sublinearity test and therefore is
    /// not a support function.
    #[error("not a support function: max sublinearity violation {violation:.3e}")]
    NotSupportFunction { violation: f64 },
    /// A direction grid was unsuitable for the requested quadrature.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenient alias used throughout the crate.
pub type GeomResult<T> = Result<T, GeomError>;
