use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

type Evaluator = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type ExactFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A semilinear reaction-diffusion two-point boundary value problem
///
/// ```text
///     eps^2 y'' = f(x, y)  on (0, 1),    y(0) = y(1) = 0,
/// ```
///
/// where the reaction term satisfies `f_y(x, y) >= m > 0`. The lower bound
/// `m` drives both the mesh grading and the stability of the discretization,
/// so it is part of the problem definition. `eps` is bound at construction
/// time because the reaction term of the built-in test problem depends on it.
#[derive(Clone)]
pub struct Problem {
    name: String,
    eps: f64,
    f: Evaluator,
    fy: Evaluator,
    m: f64,
    gamma_default: f64,
    exact: Option<ExactFn>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("Problem")
            .field("name", &self.name)
            .field("eps", &self.eps)
            .field("m", &self.m)
            .field("gamma_default", &self.gamma_default)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl Problem {
    /// Builds a problem from closures for `f` and `f_y`.
    pub fn new<F, G>(name: &str, eps: f64, f: F, fy: G, m: f64, gamma_default: f64) -> Problem
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        assert!(eps > 0.0, "eps must be positive");
        assert!(m > 0.0, "m must be positive");
        assert!(gamma_default > 0.0, "gamma must be positive");
        Problem {
            name: name.to_string(),
            eps,
            f: Arc::new(f),
            fy: Arc::new(fy),
            m,
            gamma_default,
            exact: None,
        }
    }

    /// Attaches a known exact solution (used for error measurement).
    pub fn with_exact<E>(mut self, exact: E) -> Problem
    where
        E: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.exact = Some(Arc::new(exact));
        self
    }

    /// The built-in test problem
    ///
    /// ```text
    ///     f(x, y) = y + cos^2(pi x) + 2 eps^2 pi^2 cos(2 pi x),
    /// ```
    ///
    /// with `f_y = 1`, `m = 1`, default stabilizer `gamma = 1` and exact
    /// solution
    ///
    /// ```text
    ///     y(x) = (e^(-x/eps) + e^(-(1-x)/eps)) / (1 + e^(-1/eps)) - cos^2(pi x),
    /// ```
    ///
    /// which has boundary layers of width O(eps) at both endpoints.
    pub fn builtin_example1(eps: f64) -> Problem {
        let fe = move |x: f64, y: f64| {
            y + (PI * x).cos().powi(2) + 2.0 * eps * eps * PI * PI * (2.0 * PI * x).cos()
        };
        Problem::new("builtin:example1", eps, fe, |_, _| 1.0, 1.0, 1.0)
            .with_exact(move |x| exact_example1(x, eps))
    }

    /// The trivial problem `f(x, y) = y`, whose exact solution is
    /// identically zero. Useful as a smoke test: any correct scheme must
    /// return the zero vector on any mesh.
    pub fn pure_reaction(eps: f64) -> Problem {
        Problem::new("builtin:pure", eps, |_, y| y, |_, _| 1.0, 1.0, 1.0).with_exact(|_| 0.0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Reaction term f(x, y).
    pub fn f(&self, x: f64, y: f64) -> f64 {
        (self.f)(x, y)
    }

    /// Partial derivative f_y(x, y).
    pub fn fy(&self, x: f64, y: f64) -> f64 {
        (self.fy)(x, y)
    }

    /// Lower bound m with f_y >= m > 0.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Default stabilizer gamma (must satisfy gamma >= f_y during solves).
    pub fn gamma_default(&self) -> f64 {
        self.gamma_default
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact solution at `x`, if the problem carries one.
    pub fn exact(&self, x: f64) -> Option<f64> {
        self.exact.as_ref().map(|e| e(x))
    }
}

/// Exact solution of the built-in problem. All exponents are nonpositive,
/// so the evaluation never overflows, down to eps = 2^-40 and beyond.
fn exact_example1(x: f64, eps: f64) -> f64 {
    let num = (-x / eps).exp() + (-(1.0 - x) / eps).exp();
    num / (1.0 + (-1.0 / eps).exp()) - (PI * x).cos().powi(2)
}
