//! Fitted finite-difference solver for singularly perturbed
//! reaction-diffusion two-point boundary value problems
//!
//! ```text
//! eps^2 y'' = f(x, y),   y(0) = y(1) = 0,   0 < eps << 1
//! ```
//!
//! on layer-adapted meshes (Shishkin, modified Shishkin, Bakhvalov,
//! Liseikin). The discretization is a one-parameter family of fitted
//! schemes built from hyperbolic kernels; the nonlinear tridiagonal
//! system is solved by Newton's method with the Thomas algorithm.

pub mod error;
pub mod harness;
pub mod mesh;
pub mod problem;
pub mod scheme;
pub mod solver;
pub mod spline;

pub use error::{Error, Result};
pub use harness::{
    conv_order, discrete_error, format_eps, global_error, run_convergence, ConvergenceReport,
    ConvergenceRow, ReportMeta, SweepConfig,
};
pub use mesh::{build_mesh, transition_point, Mesh, MeshKind, MeshOverrides, MeshParams};
pub use problem::Problem;
pub use scheme::{
    check_m_matrix, jacobian, kernels, residual, MMatrixReport, SchemeParams, Tridiagonal,
};
pub use solver::{newton_solve, thomas_solve, DiscreteSolution, Initial, SolverConfig};
pub use spline::{
    cubic_moments, cubic_spline, dense_points, eval_global, linear_spline, GlobalSolution,
    SplineKind,
};
