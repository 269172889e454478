use thiserror::Error;

/// Failure modes shared by every computational module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative or adaptive procedure stopped before reaching its tolerance.
    #[error("{what} did not converge (best estimate {best:e}, error estimate {error:e})")]
    Convergence { what: String, best: f64, error: f64 },

    /// The field is too small somewhere on a sampling circle for its phase to be tracked.
    #[error("degenerate circle: |h| = {min_abs:e} at radius {radius:e}; retry with a smaller radius")]
    DegenerateCircle { radius: f64, min_abs: f64 },

    /// The chart is not an immersion at the point.
    #[error("immersion degenerates at ({u}, {v}): gram determinant {gram:e}")]
    Immersion { u: f64, v: f64, gram: f64 },

    /// An operation that needs isothermal coordinates was given a non-conformal chart point.
    #[error("chart is not isothermal at ({u}, {v}): defect {defect:e}")]
    NotIsothermal { u: f64, v: f64, defect: f64 },

    /// The traceless second fundamental form vanishes where a quotient by it is needed.
    #[error("umbilic point at x = {x}: |Phi| vanishes")]
    Umbilic { x: f64 },

    /// A root bracket could not be found.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A finite-difference step is dominated by roundoff.
    #[error("finite-difference step {step:e} is roundoff dominated")]
    StepTooSmall { step: f64 },
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(LabError::Domain(msg.into()))
}
