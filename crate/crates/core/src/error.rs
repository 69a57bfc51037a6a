use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("projection is not supported for {0} bodies")]
    UnsupportedShape(&'static str),

    #[error("ellipsoid projection did not converge after {0} Newton iterations")]
    NewtonNonConvergence(usize),

    #[error("polytope projection did not converge after {0} Dykstra sweeps")]
    DykstraNonConvergence(usize),

    #[error("matrix is singular or ill-conditioned (condition estimate {0:e})")]
    Singular(f64),

    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not positive definite (minimum eigenvalue {0:e})")]
    NotPositiveDefinite(f64),

    #[error("eigenvalue {eigenvalue} is within {distance:e} of a pole of {function}")]
    Pole {
        function: &'static str,
        eigenvalue: f64,
        distance: f64,
    },

    #[error("angle matrices do not commute (commutator norm {0:e})")]
    NotCommuting(f64),

    #[error("angle eigenvalue {0} lies outside (0, pi/2)")]
    AngleRange(f64),

    #[error("matrix quintuple fails the theorem hypotheses (max residual {residual:e}, min eigenvalue {min_eigenvalue:e})")]
    InvalidQuintuple { residual: f64, min_eigenvalue: f64 },

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
