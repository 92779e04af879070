use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("input is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositive { eigenvalue: f64 },

    #[error("non-finite entries in input")]
    NonFinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not normalized (norm^2 = {norm_sq})")]
    Unnormalized { norm_sq: f64 },

    #[error("grid too coarse: level {level} energy moved by {relative_change:e} (relative) under refinement")]
    GridTooCoarse { level: usize, relative_change: f64 },

    #[error("box too small: level {level} has |psi(z_max)| = {tail:e} of its peak")]
    BoxTooSmall { level: usize, tail: f64 },

    #[error("quadrature did not converge (estimated error {estimate:e})")]
    QuadratureNonConvergence { estimate: f64 },

    #[error("perturbation regime violated: |delta|/Omega = {ratio} > 0.1")]
    PerturbationRegime { ratio: f64 },

    #[error("closed-form regime violated: {0}")]
    AnalyticRegime(String),

    #[error("integrator step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("no interior fidelity maximum found in (0, {window}]")]
    NoInteriorMaximum { window: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
