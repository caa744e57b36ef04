use thiserror::Error;

/// Errors produced by mesh construction, the scheme assembly and the solver.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Mesh sizes must be positive multiples of 4 (and at least 8 for the
    /// layer-adapted generators, so each branch of the generating function
    /// receives at least two points).
    #[error("invalid mesh size N = {0}: N must be a multiple of 4 and at least 8")]
    InvalidMeshSize(usize),

    /// A generator or scheme parameter violates its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The tridiagonal elimination hit a zero (or denormal) pivot.
    #[error("singular tridiagonal system: zero pivot at row {0}")]
    SingularSystem(usize),

    /// Newton ran out of iterations before the correction dropped below `tol`.
    #[error("no convergence after {iterations} iterations (last correction {last_correction:e})")]
    NoConvergence {
        iterations: usize,
        last_correction: f64,
    },

    /// The Jacobian failed the M-matrix check, which signals a violated
    /// stability precondition (typically gamma < f_y along the iterates).
    #[error("stability check failed: {0}")]
    Unstable(String),

    /// An operation that needs the exact solution was called on a problem
    /// that does not carry one.
    #[error("problem `{0}` has no exact solution")]
    NoExactSolution(String),

    /// Evaluation outside the domain [0, 1].
    #[error("point {0} lies outside [0, 1]")]
    OutOfDomain(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
