use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The four layer-adapted mesh families.
///
/// All of them condense points inside the boundary layers at x = 0 and
/// x = 1 and are symmetric about x = 1/2. They differ in how the layer
/// region blends into the interior: the Shishkin pair switches at a
/// transition point, the Bakhvalov and Liseikin meshes grade smoothly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeshKind {
    /// Piecewise-uniform mesh: fine spacing on [0, lambda], coarse in the
    /// middle, switching abruptly at the transition point.
    Shishkin,
    /// Shishkin mesh with a cubic correction term on [1/4, 1/2] that makes
    /// the generating function C^1, removing the logarithmic factor from
    /// the convergence order.
    ShishkinMod,
    /// Graded mesh built from the hyperbola a*eps*t/(q - t) continued by
    /// its tangent line through (1/2, 1/2).
    Bakhvalov,
    /// Graded mesh built from the power-law function
    /// c1*eps^k*((1 - d*t)^(-1/a) - 1) continued by a quadratic.
    Liseikin,
}

pub const ALL_MESH_KINDS: [MeshKind; 4] = [
    MeshKind::Shishkin,
    MeshKind::ShishkinMod,
    MeshKind::Bakhvalov,
    MeshKind::Liseikin,
];

impl MeshKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MeshKind::Shishkin => "shishkin",
            MeshKind::ShishkinMod => "shishkin-mod",
            MeshKind::Bakhvalov => "bakhvalov",
            MeshKind::Liseikin => "liseikin",
        }
    }
}

impl fmt::Display for MeshKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeshKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<MeshKind> {
        match s {
            "shishkin" => Ok(MeshKind::Shishkin),
            "shishkin-mod" => Ok(MeshKind::ShishkinMod),
            "bakhvalov" => Ok(MeshKind::Bakhvalov),
            "liseikin" => Ok(MeshKind::Liseikin),
            other => Err(Error::InvalidParameter(format!(
                "unknown mesh kind `{other}` (expected shishkin, shishkin-mod, bakhvalov or liseikin)"
            ))),
        }
    }
}

/// Optional overrides for the generator parameters. Fields left `None`
/// take the defaults: Bakhvalov `a = 2/sqrt(m)`, `q = 0.4`; Liseikin
/// `a = 1`, `n = 2`, `k = 1`, `c0 = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeshOverrides {
    /// Bakhvalov hyperbola strength or Liseikin exponent, depending on kind.
    pub a: Option<f64>,
    /// Bakhvalov pole position q in (0, 1/2).
    pub q: Option<f64>,
    /// Liseikin layer-width exponent n.
    pub n: Option<f64>,
    /// Liseikin eps power k.
    pub k: Option<f64>,
    /// Liseikin cubic coefficient c0 >= 0.
    pub c0: Option<f64>,
}

/// Generator parameters actually used to build a mesh, recorded for
/// diagnostics and CSV dumps.
#[derive(Debug, Clone, Copy)]
pub enum MeshParams {
    Shishkin {
        lambda: f64,
    },
    ShishkinMod {
        lambda: f64,
        p: f64,
    },
    Bakhvalov {
        a: f64,
        q: f64,
        alpha: f64,
    },
    Liseikin {
        a: f64,
        n: f64,
        k: f64,
        c0: f64,
        d: f64,
        c1: f64,
    },
}

/// Shishkin transition point `lambda = min(2 eps ln N / sqrt(m), 1/4)`.
///
/// For large eps the cap at 1/4 makes the mesh collapse to the uniform one
/// (a legitimate degenerate case, not an error).
pub fn transition_point(eps: f64, n: usize, m: f64) -> f64 {
    assert!(n >= 4, "transition point needs N >= 4");
    assert!(eps > 0.0 && m > 0.0);
    (2.0 * eps * (n as f64).ln() / m.sqrt()).min(0.25)
}

/// A validated generating function. `psi(t)` maps the uniform reference
/// grid t = i/N onto [0, 1]; every family satisfies psi(t) = 1 - psi(1-t).
#[derive(Debug, Clone, Copy)]
pub struct Generator {
    params: MeshParams,
    eps: f64,
}

impl Generator {
    /// Validates parameters and precomputes the derived constants
    /// (p, alpha, d, c1). `n` is needed for the Shishkin transition point;
    /// `m` is the problem's lower bound on f_y.
    pub fn new(
        kind: MeshKind,
        n: usize,
        eps: f64,
        m: f64,
        overrides: &MeshOverrides,
    ) -> Result<Generator> {
        if eps <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eps must be positive, got {eps}"
            )));
        }
        if m <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "m must be positive, got {m}"
            )));
        }
        let params = match kind {
            MeshKind::Shishkin => MeshParams::Shishkin {
                lambda: transition_point(eps, n, m),
            },
            MeshKind::ShishkinMod => {
                let lambda = transition_point(eps, n, m);
                MeshParams::ShishkinMod {
                    lambda,
                    p: 32.0 * (1.0 - 4.0 * lambda),
                }
            }
            MeshKind::Bakhvalov => {
                let a = overrides.a.unwrap_or(2.0 / m.sqrt());
                let q = overrides.q.unwrap_or(0.4);
                if !(q > 0.0 && q < 0.5) {
                    return Err(Error::InvalidParameter(format!(
                        "bakhvalov q must lie in (0, 1/2), got {q}"
                    )));
                }
                if !(a > 0.0 && a < q / eps) {
                    return Err(Error::InvalidParameter(format!(
                        "bakhvalov a must lie in (0, q/eps) = (0, {}), got {a}",
                        q / eps
                    )));
                }
                if a * m.sqrt() < 2.0 {
                    return Err(Error::InvalidParameter(format!(
                        "bakhvalov a*sqrt(m) must be >= 2, got {}",
                        a * m.sqrt()
                    )));
                }
                // abscissa of the point where the tangent line through
                // (1/2, 1/2) touches the hyperbola a*eps*t/(q - t)
                let alpha = (q - (a * q * eps * (1.0 - 2.0 * q + 2.0 * a * eps)).sqrt())
                    / (1.0 + 2.0 * a * eps);
                MeshParams::Bakhvalov { a, q, alpha }
            }
            MeshKind::Liseikin => {
                let a = overrides.a.unwrap_or(1.0);
                let nn = overrides.n.unwrap_or(2.0);
                let k = overrides.k.unwrap_or(1.0);
                let c0 = overrides.c0.unwrap_or(0.0);
                if a <= 0.0 || nn <= 0.0 || k <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "liseikin a, n, k must be positive, got a={a}, n={nn}, k={k}"
                    )));
                }
                if c0 < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "liseikin c0 must be nonnegative, got {c0}"
                    )));
                }
                let d = 4.0 * (1.0 - eps.powf(k * a / (1.0 + nn * a)));
                // c1 normalizes psi(1/2) to 1/2: 1/c1 equals twice the
                // middle-branch bracket at t = 1/2.
                let c1 = 1.0 / (2.0 * liseikin_bracket(0.25, eps, a, nn, k, c0, d));
                MeshParams::Liseikin {
                    a,
                    n: nn,
                    k,
                    c0,
                    d,
                    c1,
                }
            }
        };
        Ok(Generator { params, eps })
    }

    pub fn params(&self) -> &MeshParams {
        &self.params
    }

    /// Evaluates the generating function; t > 1/2 is reflected through
    /// psi(t) = 1 - psi(1 - t).
    pub fn psi(&self, t: f64) -> f64 {
        assert!((0.0..=1.0).contains(&t), "psi argument out of [0,1]: {t}");
        if t > 0.5 {
            return 1.0 - self.psi(1.0 - t);
        }
        match self.params {
            MeshParams::Shishkin { lambda } => {
                if t <= 0.25 {
                    4.0 * lambda * t
                } else {
                    lambda + 2.0 * (1.0 - 2.0 * lambda) * (t - 0.25)
                }
            }
            MeshParams::ShishkinMod { lambda, p } => {
                if t <= 0.25 {
                    4.0 * lambda * t
                } else {
                    p * (t - 0.25).powi(3) + 4.0 * lambda * t
                }
            }
            MeshParams::Bakhvalov { a, q, alpha } => {
                let mu = |s: f64| a * self.eps * s / (q - s);
                if t <= alpha {
                    mu(t)
                } else {
                    // tangent line: slope mu'(alpha) = a*eps*q/(q - alpha)^2
                    let slope = a * self.eps * q / ((q - alpha) * (q - alpha));
                    mu(alpha) + slope * (t - alpha)
                }
            }
            MeshParams::Liseikin { a, n, k, c0, d, c1 } => {
                if t <= 0.25 {
                    c1 * self.eps.powf(k) * ((1.0 - d * t).powf(-1.0 / a) - 1.0)
                } else {
                    c1 * liseikin_bracket(t - 0.25, self.eps, a, n, k, c0, d)
                }
            }
        }
    }
}

/// Middle-branch bracket of the Liseikin generator, as a function of
/// u = t - 1/4.
fn liseikin_bracket(u: f64, eps: f64, a: f64, n: f64, k: f64, c0: f64, d: f64) -> f64 {
    let s = k * a / (1.0 + n * a);
    eps.powf(s * n) - eps.powf(k)
        + d / a * eps.powf(s * (n - 1.0)) * u
        + 0.5 * d * d / a * (1.0 / a + 1.0) * eps.powf(s * (n - 2.0)) * u * u
        + c0 * u * u * u
}

/// A layer-adapted mesh 0 = x_0 < x_1 < ... < x_N = 1.
#[derive(Debug, Clone)]
pub struct Mesh {
    points: Vec<f64>,
    kind: MeshKind,
    eps: f64,
    params: MeshParams,
    psi_half_defect: f64,
}

impl Mesh {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Number of intervals N (one less than the number of points).
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    /// Interval length h_i = x_{i+1} - x_i.
    pub fn h(&self, i: usize) -> f64 {
        self.points[i + 1] - self.points[i]
    }

    pub fn kind(&self) -> MeshKind {
        self.kind
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn params(&self) -> &MeshParams {
        &self.params
    }

    /// Raw deviation of psi(1/2) from 1/2 before the midpoint was snapped;
    /// a diagnostic for the generator normalization (order 1e-16 when the
    /// parameters are consistent).
    pub fn psi_half_defect(&self) -> f64 {
        self.psi_half_defect
    }

    /// The uniform mesh x_i = i/N — the degenerate lambda = 1/4 limit of
    /// the Shishkin family. Accepts any N >= 2 (the layer-adapted builders
    /// require N >= 8), which makes it useful for small brute-force
    /// comparisons.
    pub fn uniform(n: usize, eps: f64) -> Mesh {
        assert!(n >= 2);
        let points = (0..=n).map(|i| i as f64 / n as f64).collect();
        Mesh {
            points,
            kind: MeshKind::Shishkin,
            eps,
            params: MeshParams::Shishkin { lambda: 0.25 },
            psi_half_defect: 0.0,
        }
    }
}

/// Builds an N+1 point mesh by evaluating the generating function on the
/// left half of the reference grid and mirroring, so the symmetry
/// x_i + x_{N-i} = 1 holds exactly. Endpoints are snapped to 0 and 1; the
/// midpoint is snapped to 1/2 (the raw defect is kept as a diagnostic).
pub fn build_mesh(
    kind: MeshKind,
    n: usize,
    eps: f64,
    m: f64,
    overrides: &MeshOverrides,
) -> Result<Mesh> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(Error::InvalidMeshSize(n));
    }
    let gen = Generator::new(kind, n, eps, m, overrides)?;
    let mut points = vec![0.0; n + 1];
    for (i, p) in points.iter_mut().enumerate().take(n / 2 + 1).skip(1) {
        *p = gen.psi(i as f64 / n as f64);
    }
    let defect = points[n / 2] - 0.5;
    if defect.abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "generating function misses 1/2 at t = 1/2 by {defect:e} (inconsistent parameters)"
        )));
    }
    points[n / 2] = 0.5;
    for i in n / 2 + 1..=n {
        points[i] = 1.0 - points[n - i];
    }
    for i in 0..n {
        if points[i + 1] <= points[i] {
            return Err(Error::InvalidParameter(format!(
                "mesh not strictly increasing at i = {i} (x_i = {}, x_(i+1) = {})",
                points[i],
                points[i + 1]
            )));
        }
    }
    Ok(Mesh {
        points,
        kind,
        eps,
        params: *gen.params(),
        psi_half_defect: defect,
    })
}
