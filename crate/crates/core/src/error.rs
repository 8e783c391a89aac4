use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NehariError {
    #[error("invalid grid: node count {0} must be odd and at least 3")]
    InvalidGrid(usize),

    #[error("invalid exponent {0}: must be greater than 1")]
    InvalidExponent(f64),

    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("functions live on different grids ({0} vs {1} nodes)")]
    GridMismatch(usize, usize),

    #[error("input is not symmetric about 1/2: defect {defect:e} exceeds tolerance {tolerance:e}")]
    AsymmetricInput { defect: f64, tolerance: f64 },

    #[error("cannot normalize the zero function")]
    ZeroDirection,

    #[error("energy maximum sits on the search boundary at t = {t} (interval [{lower}, {upper}])")]
    BoundaryMaximum { t: f64, lower: f64, upper: f64 },

    #[error("ambiguous maximum: energies {e1} at t = {t1} and {e2} at t = {t2} tie within tolerance")]
    AmbiguousMaximum { t1: f64, e1: f64, t2: f64, e2: f64 },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("direction sampler produced a non-member at index {index}: {reason}")]
    Sampler { index: usize, reason: String },

    #[error("estimation failed: {0}")]
    Estimation(String),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, NehariError>;
