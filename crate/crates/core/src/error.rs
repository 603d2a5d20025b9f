use thiserror::Error;

/// Errors raised by the geometry, metric and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("axis `{name}` must be positive and finite, got {value}")]
    NonPositiveAxis { name: &'static str, value: f64 },

    #[error("the paraboloid projection is undefined at the plane origin (0, 0)")]
    ParaboloidOriginUndefined,

    #[error("point ({x}, {y}, {z}) is the projection pole and has no image in the plane")]
    PoleNotProjectable { x: f64, y: f64, z: f64 },

    #[error("point ({x}, {y}, {z}) is not on the surface: residual {residual:e} exceeds {tol:e}")]
    NotOnSurface {
        x: f64,
        y: f64,
        z: f64,
        residual: f64,
        tol: f64,
    },

    #[error("plane z = {d} does not cut the surface in a proper ellipse (valid range {range})")]
    DegenerateSection { d: f64, range: String },

    #[error("sample count {n} is invalid, need at least {min}")]
    InvalidSampleCount { n: usize, min: usize },

    #[error("curve velocity vanishes, curvature is undefined")]
    SingularVelocity,

    #[error("quadrature did not reach relative tolerance {rel_tol:e} within {budget} evaluations (estimate {error_estimate:e})")]
    QuadratureNonConvergence {
        rel_tol: f64,
        budget: usize,
        error_estimate: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("finite-difference stencil leaves the map's domain: {0}")]
    DomainError(String),

    #[error("focal-sum check failed: max deviation {deviation:e} relative to the major axis")]
    FocusCheckFailed { deviation: f64 },

    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewPoints(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
