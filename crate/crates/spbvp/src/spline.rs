use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scheme::Tridiagonal;
use crate::solver::{thomas_solve, DiscreteSolution};

/// Which global interpolant a `GlobalSolution` carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplineKind {
    Linear,
    Cubic,
}

impl SplineKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SplineKind::Linear => "linear",
            SplineKind::Cubic => "cubic",
        }
    }
}

impl FromStr for SplineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SplineKind> {
        match s {
            "linear" => Ok(SplineKind::Linear),
            "cubic" => Ok(SplineKind::Cubic),
            other => Err(Error::InvalidParameter(format!(
                "unknown spline kind `{other}` (expected linear or cubic)"
            ))),
        }
    }
}

/// A global (defined on all of [0,1]) solution interpolating nodal values:
/// either the piecewise-linear interpolant or the natural cubic spline in
/// moment form (moments M_i are the spline's second derivatives at the
/// knots, with M_0 = M_N = 0).
#[derive(Debug, Clone)]
pub struct GlobalSolution {
    pub kind: SplineKind,
    pub knots: Vec<f64>,
    pub values: Vec<f64>,
    /// Second-derivative moments; present only for the cubic kind.
    pub moments: Option<Vec<f64>>,
}

/// Piecewise-linear interpolant of arbitrary nodes.
pub fn linear_from_nodes(knots: &[f64], values: &[f64]) -> GlobalSolution {
    assert!(knots.len() >= 2, "need at least two knots");
    assert_eq!(knots.len(), values.len());
    GlobalSolution {
        kind: SplineKind::Linear,
        knots: knots.to_vec(),
        values: values.to_vec(),
        moments: None,
    }
}

/// Natural cubic spline of arbitrary nodes (see `cubic_moments_from_nodes`).
pub fn cubic_from_nodes(knots: &[f64], values: &[f64]) -> GlobalSolution {
    let moments = cubic_moments_from_nodes(knots, values);
    GlobalSolution {
        kind: SplineKind::Cubic,
        knots: knots.to_vec(),
        values: values.to_vec(),
        moments: Some(moments),
    }
}

/// Moments M_0 ... M_N of the natural cubic spline: M_0 = M_N = 0 and,
/// for i = 1 ... N-1, with h_i = x_{i+1} - x_i,
///
/// ```text
/// (h_{i-1}/6) M_{i-1} + ((h_{i-1}+h_i)/3) M_i + (h_i/6) M_{i+1}
///     = (y_{i+1}-y_i)/h_i - (y_i-y_{i-1})/h_{i-1}
/// ```
///
/// The system is strictly diagonally dominant for any strictly increasing
/// knot sequence, so the tridiagonal solve cannot fail.
pub fn cubic_moments_from_nodes(knots: &[f64], values: &[f64]) -> Vec<f64> {
    let n = knots.len() - 1;
    assert!(n >= 2, "cubic spline needs at least three knots");
    assert_eq!(knots.len(), values.len());
    // interior (N-1)-dimensional system
    let h = |i: usize| knots[i + 1] - knots[i];
    let mut sub = vec![0.0; n - 2];
    let mut diag = vec![0.0; n - 1];
    let mut sup = vec![0.0; n - 2];
    let mut rhs = vec![0.0; n - 1];
    for i in 1..n {
        diag[i - 1] = (h(i - 1) + h(i)) / 3.0;
        if i > 1 {
            sub[i - 2] = h(i - 1) / 6.0;
        }
        if i < n - 1 {
            sup[i - 1] = h(i) / 6.0;
        }
        rhs[i - 1] = (values[i + 1] - values[i]) / h(i) - (values[i] - values[i - 1]) / h(i - 1);
    }
    let interior = thomas_solve(&Tridiagonal { sub, diag, sup }, &rhs)
        .expect("moment system is strictly diagonally dominant");
    let mut m = vec![0.0; n + 1];
    m[1..n].copy_from_slice(&interior);
    m
}

/// Piecewise-linear interpolant of a solved discrete problem.
pub fn linear_spline(sol: &DiscreteSolution) -> GlobalSolution {
    linear_from_nodes(sol.mesh.points(), &sol.values)
}

/// Natural cubic spline of a solved discrete problem.
pub fn cubic_spline(sol: &DiscreteSolution) -> GlobalSolution {
    cubic_from_nodes(sol.mesh.points(), &sol.values)
}

/// Moments of the natural cubic spline of a solved discrete problem.
pub fn cubic_moments(sol: &DiscreteSolution) -> Vec<f64> {
    cubic_moments_from_nodes(sol.mesh.points(), &sol.values)
}

impl GlobalSolution {
    /// Index of the interval used to evaluate at x: a knot query falls in
    /// the interval to the knot's right, except x = 1 which uses the last
    /// interval.
    fn interval(&self, x: f64) -> usize {
        self.knots
            .partition_point(|&p| p <= x)
            .saturating_sub(1)
            .min(self.knots.len() - 2)
    }

    /// Evaluates the global solution at x in [0, 1].
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfDomain(x));
        }
        let i = self.interval(x);
        Ok(self.eval_on(i, x))
    }

    /// Evaluates the defining polynomial of interval i at x (no search,
    /// no domain check).
    fn eval_on(&self, i: usize, x: f64) -> f64 {
        let (x0, x1) = (self.knots[i], self.knots[i + 1]);
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let h = x1 - x0;
        match self.kind {
            SplineKind::Linear => y0 + (y1 - y0) * (x - x0) / h,
            SplineKind::Cubic => {
                let m = self.moments.as_ref().expect("cubic spline carries moments");
                let (m0, m1) = (m[i], m[i + 1]);
                let (dl, dr) = (x1 - x, x - x0);
                m0 * dl * dl * dl / (6.0 * h)
                    + m1 * dr * dr * dr / (6.0 * h)
                    + (y0 - m0 * h * h / 6.0) * dl / h
                    + (y1 - m1 * h * h / 6.0) * dr / h
            }
        }
    }
}

/// Evaluates a global solution at x in [0, 1].
pub fn eval_global(g: &GlobalSolution, x: f64) -> Result<f64> {
    g.eval(x)
}

/// Sample points for dense evaluation: `per_interval` uniform samples in
/// every mesh interval (left endpoints included) plus the final knot, so
/// knots and interior points are all covered.
pub fn dense_points(knots: &[f64], per_interval: usize) -> Vec<f64> {
    assert!(per_interval >= 1);
    let n = knots.len() - 1;
    let mut out = Vec::with_capacity(n * per_interval + 1);
    for i in 0..n {
        let h = knots[i + 1] - knots[i];
        for j in 0..per_interval {
            out.push(knots[i] + h * j as f64 / per_interval as f64);
        }
    }
    out.push(knots[n]);
    out
}
