use thiserror::Error;

/// Errors raised by the discretization, norm and operator layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("exponent out of range: {condition} violated at {location} (value {value})")]
    ExponentOutOfRange {
        condition: &'static str,
        location: String,
        value: f64,
    },

    #[error("empty mesh: {0}")]
    EmptyMesh(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("fractional order s = {0} must lie in (0, 1)")]
    InvalidOrder(f64),

    #[error("length mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("could not bracket the Luxemburg norm after {0} doublings")]
    BracketFailure(usize),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<f64>,
    },

    #[error("target lies (numerically) on the image of the boundary: min distance {min_distance:e}, threshold {threshold:e}")]
    BoundaryHit { min_distance: f64, threshold: f64 },

    #[error("winding refinement exceeded {0} boundary samples")]
    RefinementLimit(usize),

    #[error("solution gate failed: residual {residual:e} exceeds {tol:e}")]
    NotASolution { residual: f64, tol: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
