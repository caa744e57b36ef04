use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::problem::Problem;
use crate::scheme::{check_m_matrix, jacobian, residual, SchemeParams, Tridiagonal};

/// Starting guess for the Newton iteration.
#[derive(Debug, Clone)]
pub enum Initial {
    /// Constant interior value; boundaries are pinned to 0.
    Constant(f64),
    /// Full vector of N+1 values; boundaries are pinned to 0.
    Vector(Vec<f64>),
}

/// Newton iteration controls.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Stop when the max-norm of the Newton correction drops to this.
    pub tol: f64,
    pub max_iterations: usize,
    pub initial: Initial,
    /// Check the M-matrix structure of the Jacobian at every iterate and
    /// abort with an error on violation (diagnoses gamma < f_y).
    pub strict: bool,
    /// Halve the Newton step while the residual max-norm increases
    /// (a safety net for user-supplied problems; never triggers when the
    /// M-matrix structure holds along the path).
    pub line_search: bool,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            tol: 1e-10,
            max_iterations: 50,
            initial: Initial::Constant(0.0),
            strict: false,
            line_search: false,
        }
    }
}

/// Converged (or abandoned) result of a Newton solve.
#[derive(Debug, Clone)]
pub struct DiscreteSolution {
    pub mesh: Mesh,
    /// Nodal values y_0 ... y_N (boundaries exactly 0).
    pub values: Vec<f64>,
    /// Newton iterations actually performed.
    pub iterations: usize,
    /// Max-norm of each Newton correction, in order.
    pub corrections: Vec<f64>,
    /// Max-norm of the last Newton correction.
    pub final_correction: f64,
    /// Whether final_correction reached the configured tolerance.
    pub converged: bool,
    pub params: SchemeParams,
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

/// Solves the tridiagonal system H d = rhs by the Thomas algorithm
/// (LU without pivoting), O(N). The scheme's Jacobians are strictly
/// diagonally dominant, so pivoting is never needed; a vanishing or
/// denormal pivot reports the row as a singular system.
pub fn thomas_solve(h: &Tridiagonal, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = h.diag.len();
    assert_eq!(rhs.len(), n, "rhs length must match matrix dimension");
    assert_eq!(h.sub.len(), n - 1);
    assert_eq!(h.sup.len(), n - 1);
    let mut scratch = vec![0.0; n - 1];
    let mut x = vec![0.0; n];
    let mut piv = h.diag[0];
    if !piv.is_normal() {
        return Err(Error::SingularSystem(0));
    }
    x[0] = rhs[0] / piv;
    for i in 1..n {
        scratch[i - 1] = h.sup[i - 1] / piv;
        piv = h.diag[i] - h.sub[i - 1] * scratch[i - 1];
        if !piv.is_normal() {
            return Err(Error::SingularSystem(i));
        }
        x[i] = (rhs[i] - h.sub[i - 1] * x[i - 1]) / piv;
    }
    for i in (0..n - 1).rev() {
        x[i] -= scratch[i] * x[i + 1];
    }
    Ok(x)
}

/// Solves the discrete problem T y = 0 by Newton's method:
/// y <- y - H(y)^{-1} T(y), boundary entries pinned to 0, stopping when
/// the correction max-norm reaches `cfg.tol` or `cfg.max_iterations` is
/// exhausted (the returned solution then carries `converged = false`).
pub fn newton_solve(
    p: &Problem,
    mesh: &Mesh,
    sp: &SchemeParams,
    cfg: &SolverConfig,
) -> Result<DiscreteSolution> {
    assert!(cfg.tol > 0.0, "tolerance must be positive");
    assert!(cfg.max_iterations >= 1);
    let n = mesh.n();
    let mut y = match &cfg.initial {
        Initial::Constant(v) => vec![*v; n + 1],
        Initial::Vector(v) => {
            assert_eq!(v.len(), n + 1, "initial vector length must be N+1");
            v.clone()
        }
    };
    y[0] = 0.0;
    y[n] = 0.0;
    let mut corrections = Vec::new();
    let mut converged = false;
    let mut res = residual(p, mesh, sp, &y);
    for iter in 0..cfg.max_iterations {
        let h = jacobian(p, mesh, sp, &y);
        if cfg.strict {
            let report = check_m_matrix(&h, p.m());
            if !report.pass {
                return Err(Error::Unstable(format!(
                    "Newton iterate {iter}: {}",
                    report
                        .reason
                        .unwrap_or_else(|| "M-matrix check failed".into())
                )));
            }
        }
        let delta = thomas_solve(&h, &res)?;
        let mut step = 1.0;
        let mut y_next: Vec<f64> = y.iter().zip(&delta).map(|(a, d)| a - d).collect();
        y_next[0] = 0.0;
        y_next[n] = 0.0;
        let mut res_next = residual(p, mesh, sp, &y_next);
        if cfg.line_search {
            let res_norm = max_norm(&res);
            for _ in 0..30 {
                if max_norm(&res_next) <= res_norm {
                    break;
                }
                step *= 0.5;
                y_next = y.iter().zip(&delta).map(|(a, d)| a - step * d).collect();
                y_next[0] = 0.0;
                y_next[n] = 0.0;
                res_next = residual(p, mesh, sp, &y_next);
            }
        }
        y = y_next;
        res = res_next;
        let correction = step * max_norm(&delta);
        corrections.push(correction);
        if correction <= cfg.tol {
            converged = true;
            break;
        }
    }
    let final_correction = corrections.last().copied().unwrap_or(f64::INFINITY);
    Ok(DiscreteSolution {
        mesh: mesh.clone(),
        values: y,
        iterations: corrections.len(),
        corrections,
        final_correction,
        converged,
        params: *sp,
    })
}
