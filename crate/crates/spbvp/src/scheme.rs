use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::problem::Problem;

/// Parameters of the one-parameter fitted-scheme family.
///
/// `t` blends two exponentially fitted discretizations (t = 0 and t = 1
/// are the pure members, t = 1/2 the symmetric average). `gamma` is the
/// fitting constant, which must dominate f_y for the scheme's M-matrix
/// structure to hold; `beta = sqrt(gamma)/eps` is the layer frequency the
/// hyperbolic kernels are tuned to.
#[derive(Debug, Clone, Copy)]
pub struct SchemeParams {
    t: f64,
    gamma: f64,
    eps: f64,
    beta: f64,
}

impl SchemeParams {
    pub fn new(t: f64, gamma: f64, eps: f64) -> Result<SchemeParams> {
        if !(0.0..=1.0).contains(&t) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scheme parameter t must lie in [0, 1], got {t}"
            )));
        }
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        if !eps.is_finite() || eps <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eps must be positive, got {eps}"
            )));
        }
        Ok(SchemeParams {
            t,
            gamma,
            eps,
            beta: gamma.sqrt() / eps,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Tridiagonal matrix of dimension N+1: `sub` and `sup` hold the N
/// off-diagonal entries, `diag` the N+1 diagonal entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
}

impl Tridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Dense matrix-vector product, used by tests and residual checks.
    pub fn mul(&self, v: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        assert_eq!(v.len(), n);
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.sub[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// The three hyperbolic kernels of the fitted scheme at argument
/// z = beta*h:
///
/// ```text
/// a = (cosh z - 1)/sinh z = tanh(z/2)
/// b = (cosh z + 1)/sinh z = 1/tanh(z/2)
/// c = 1/sinh z
/// ```
///
/// Evaluated in overflow-free form: `c` goes through scaled exponentials
/// (2 e^{-z} / (1 - e^{-2z})), so z up to 1e6 saturates cleanly to
/// (1, 1, 0); for z < 1e-8 the leading series terms a = z/2, b = 2/z,
/// c = 1/z avoid cancellation in cosh z - 1.
pub fn kernels(beta: f64, h: f64) -> (f64, f64, f64) {
    let z = beta * h;
    assert!(z > 0.0, "kernels requires beta*h > 0, got {z}");
    if z < 1e-8 {
        return (0.5 * z, 2.0 / z, 1.0 / z);
    }
    let a = (0.5 * z).tanh();
    let b = 1.0 / a;
    let c = 2.0 * (-z).exp() / (-(-2.0 * z).exp_m1());
    (a, b, c)
}

/// Per-interval coefficients of the scheme: `a` is the kernel a(beta*h),
/// `w` the flux weight ((1-t) cosh(beta*h) + t)/sinh(beta*h), computed
/// stably as (1-t)*b + (2t-1)*c.
fn interval_coeffs(sp: &SchemeParams, mesh: &Mesh) -> (Vec<f64>, Vec<f64>) {
    let n = mesh.n();
    let mut av = vec![0.0; n];
    let mut wv = vec![0.0; n];
    for j in 0..n {
        let (a, b, c) = kernels(sp.beta, mesh.h(j));
        av[j] = a;
        wv[j] = (1.0 - sp.t) * b + (2.0 * sp.t - 1.0) * c;
    }
    (av, wv)
}

/// The discrete operator T applied to y (the residual of T y = 0).
///
/// Boundary rows pin the Dirichlet data: (Ty)_0 = -y_0, (Ty)_N = -y_N.
/// Interior rows are the fitted scheme scaled by gamma/(a_{i-1} + a_i),
/// which makes residual magnitudes mesh-scale-free:
///
/// ```text
/// (Ty)_i = gamma/(a0+a1) * { w0 (y_{i-1} - y_i) - w1 (y_i - y_{i+1})
///          - [(1-t) f_{i-1} + t f_i]/gamma * a0
///          - [t f_i + (1-t) f_{i+1}]/gamma * a1 }
/// ```
///
/// with kernels a0, w0 at h_{i-1} and a1, w1 at h_i, f_k = f(x_k, y_k).
pub fn residual(p: &Problem, mesh: &Mesh, sp: &SchemeParams, y: &[f64]) -> Vec<f64> {
    let n = mesh.n();
    assert_eq!(y.len(), n + 1, "y must have N+1 entries");
    let x = mesh.points();
    let t = sp.t;
    let gamma = sp.gamma;
    let (av, wv) = interval_coeffs(sp, mesh);
    let fv: Vec<f64> = (0..=n).map(|i| p.f(x[i], y[i])).collect();
    let mut out = vec![0.0; n + 1];
    out[0] = -y[0];
    out[n] = -y[n];
    for i in 1..n {
        let (a0, a1) = (av[i - 1], av[i]);
        let (w0, w1) = (wv[i - 1], wv[i]);
        let g = gamma / (a0 + a1);
        out[i] = g
            * (w0 * (y[i - 1] - y[i])
                - w1 * (y[i] - y[i + 1])
                - ((1.0 - t) * fv[i - 1] + t * fv[i]) / gamma * a0
                - (t * fv[i] + (1.0 - t) * fv[i + 1]) / gamma * a1);
    }
    out
}

/// The Fréchet derivative H = T'(y) of the discrete operator, a
/// tridiagonal matrix. Boundary rows are -1 on the diagonal; interior
/// rows, with g = gamma/(a0+a1):
///
/// ```text
/// H[i,i-1] = g (w0 - (1-t) f_y(x_{i-1}, y_{i-1}) a0 / gamma)
/// H[i,i]   = -g (w0 + w1 + t f_y(x_i, y_i) (a0 + a1) / gamma)
/// H[i,i+1] = g (w1 - (1-t) f_y(x_{i+1}, y_{i+1}) a1 / gamma)
/// ```
pub fn jacobian(p: &Problem, mesh: &Mesh, sp: &SchemeParams, y: &[f64]) -> Tridiagonal {
    let n = mesh.n();
    assert_eq!(y.len(), n + 1, "y must have N+1 entries");
    let x = mesh.points();
    let t = sp.t;
    let gamma = sp.gamma;
    let (av, wv) = interval_coeffs(sp, mesh);
    let fyv: Vec<f64> = (0..=n).map(|i| p.fy(x[i], y[i])).collect();
    let mut sub = vec![0.0; n];
    let mut diag = vec![0.0; n + 1];
    let mut sup = vec![0.0; n];
    diag[0] = -1.0;
    diag[n] = -1.0;
    for i in 1..n {
        let (a0, a1) = (av[i - 1], av[i]);
        let (w0, w1) = (wv[i - 1], wv[i]);
        let g = gamma / (a0 + a1);
        sub[i - 1] = g * (w0 - (1.0 - t) * fyv[i - 1] * a0 / gamma);
        sup[i] = g * (w1 - (1.0 - t) * fyv[i + 1] * a1 / gamma);
        diag[i] = -g * (w0 + w1 + t * fyv[i] * (a0 + a1) / gamma);
    }
    Tridiagonal { sub, diag, sup }
}

/// Result of the M-matrix diagnostic on a scheme Jacobian.
#[derive(Debug, Clone)]
pub struct MMatrixReport {
    /// Sign pattern holds and the dominance margin reaches m.
    pub pass: bool,
    /// Minimal interior dominance margin |diag| - |sub| - |sup|. The two
    /// boundary rows are Dirichlet pins and only contribute their sign.
    pub margin: f64,
    /// Row of the first violation, if any.
    pub offending_row: Option<usize>,
    /// Human-readable description of the first violation.
    pub reason: Option<String>,
}

/// Checks the M-matrix structure that underwrites the scheme's stability:
/// nonnegative off-diagonals (a saturated kernel may make them exactly
/// zero), negative diagonal, and interior diagonal dominance margin of at
/// least m (up to a 1e-10 relative slack for rounding).
pub fn check_m_matrix(h: &Tridiagonal, m: f64) -> MMatrixReport {
    let n = h.diag.len() - 1;
    let mut margin = f64::INFINITY;
    let mut offending_row = None;
    let mut reason = None;
    let fail = |row: usize,
                why: String,
                offending_row: &mut Option<usize>,
                reason: &mut Option<String>| {
        if offending_row.is_none() {
            *offending_row = Some(row);
            *reason = Some(why);
        }
    };
    for i in 0..=n {
        if h.diag[i] >= 0.0 || h.diag[i].is_nan() {
            fail(
                i,
                format!("diagonal entry H[{i},{i}] = {} is not negative", h.diag[i]),
                &mut offending_row,
                &mut reason,
            );
        }
        if i == 0 || i == n {
            continue;
        }
        if h.sub[i - 1] < 0.0 {
            fail(
                i,
                format!(
                    "sub-diagonal entry H[{i},{}] = {} is negative",
                    i - 1,
                    h.sub[i - 1]
                ),
                &mut offending_row,
                &mut reason,
            );
        }
        if h.sup[i] < 0.0 {
            fail(
                i,
                format!(
                    "super-diagonal entry H[{i},{}] = {} is negative",
                    i + 1,
                    h.sup[i]
                ),
                &mut offending_row,
                &mut reason,
            );
        }
        let row_margin = h.diag[i].abs() - h.sub[i - 1].abs() - h.sup[i].abs();
        if row_margin < margin {
            margin = row_margin;
            if row_margin < m * (1.0 - 1e-10) && offending_row.is_none() {
                offending_row = Some(i);
                reason = Some(format!(
                    "dominance margin {row_margin} at row {i} is below m = {m}"
                ));
            }
        }
    }
    let sign_ok = reason
        .as_deref()
        .is_none_or(|r| r.starts_with("dominance"));
    let pass = offending_row.is_none() || (sign_ok && margin >= m * (1.0 - 1e-10));
    MMatrixReport {
        pass,
        margin,
        offending_row: if pass { None } else { offending_row },
        reason: if pass { None } else { reason },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_mesh, MeshKind, MeshOverrides, ALL_MESH_KINDS};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn sp(t: f64, gamma: f64, eps: f64) -> SchemeParams {
        SchemeParams::new(t, gamma, eps).unwrap()
    }

    #[test]
    fn scheme_params_validation() {
        assert!(SchemeParams::new(-0.1, 1.0, 0.5).is_err());
        assert!(SchemeParams::new(1.1, 1.0, 0.5).is_err());
        assert!(SchemeParams::new(0.5, 0.0, 0.5).is_err());
        assert!(SchemeParams::new(0.5, 1.0, -1.0).is_err());
        let p = sp(0.5, 4.0, 0.125);
        assert_eq!(p.beta(), 16.0);
    }

    #[test]
    fn kernels_at_moderate_argument() {
        // frozen 40-digit evaluations at z = 2
        let (a, b, c) = kernels(2.0, 1.0);
        assert!((a - 0.761_594_155_955_764_9).abs() < 1e-15);
        assert!((b - 1.313_035_285_499_331_3).abs() < 1e-15);
        assert!((c - 0.275_720_564_771_783_2).abs() < 1e-15);
    }

    #[test]
    fn kernels_saturate_without_overflow() {
        for z in [800.0, 2e4, 1e6] {
            let (a, b, c) = kernels(z, 1.0);
            assert!((a - 1.0).abs() < 1e-15);
            assert!((b - 1.0).abs() < 1e-15);
            assert!(c.abs() < 1e-15);
            assert!(a.is_finite() && b.is_finite() && c.is_finite());
        }
    }

    #[test]
    fn kernels_series_region_is_seamless() {
        // just above the switchover the direct formulas agree with the
        // series to full precision
        for z in [2e-8, 5e-8, 1e-7] {
            let (a, b, c) = kernels(1.0, z);
            assert!((a - 0.5 * z).abs() <= 1e-12 * z);
            assert!((b - 2.0 / z).abs() <= 1e-12 * (2.0 / z));
            assert!((c - 1.0 / z).abs() <= 1e-12 * (1.0 / z));
        }
        // below it the series is used verbatim
        let (a, b, c) = kernels(1e-10, 1.0);
        assert_eq!(a, 5e-11);
        assert_eq!(b, 2e10);
        assert_eq!(c, 1e10);
    }

    #[test]
    fn kernel_identities_hold() {
        // a*b = 1 and b - a = 2c on 50 log-spaced points; the difference
        // identity is checked relative to b, the largest term in it
        let (lo, hi) = (1e-8f64.ln(), 700f64.ln());
        for k in 0..50 {
            let z = (lo + (hi - lo) * k as f64 / 49.0).exp();
            let (a, b, c) = kernels(z, 1.0);
            assert!((a * b - 1.0).abs() <= 1e-12, "z = {z}");
            assert!(((b - a) - 2.0 * c).abs() <= 1e-12 * b, "z = {z}");
        }
    }

    #[test]
    fn kernels_finite_over_extreme_range() {
        for k in 0..=160 {
            let z = 10f64.powf(-10.0 + 16.0 * k as f64 / 160.0);
            let (a, b, c) = kernels(z, 1.0);
            assert!(a.is_finite() && b.is_finite() && c.is_finite(), "z = {z}");
            assert!(a > 0.0 && a <= 1.0);
            assert!(b >= 1.0);
            assert!(c >= 0.0);
        }
    }

    #[test]
    fn residual_vanishes_for_zero_solution_of_pure_problem() {
        let p = Problem::pure_reaction(2.0f64.powi(-3));
        let mesh = build_mesh(
            MeshKind::ShishkinMod,
            16,
            p.eps(),
            p.m(),
            &MeshOverrides::default(),
        )
        .unwrap();
        let y = vec![0.0; 17];
        for t in [0.0, 0.5, 1.0] {
            let r = residual(&p, &mesh, &sp(t, 1.0, p.eps()), &y);
            assert!(r.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn residual_matches_naive_transcription() {
        // On a coarse uniform mesh with moderate beta*h the raw formula
        // with literal cosh/sinh is perfectly stable; the production
        // kernels must reproduce it.
        let eps = 0.25;
        let p = Problem::builtin_example1(eps);
        let mesh = Mesh::uniform(4, eps);
        let y = [0.0, 0.3, -0.2, 0.1, 0.0];
        let gamma = 1.0f64;
        let beta = gamma.sqrt() / eps;
        for t in [0.0, 0.3, 1.0] {
            let r = residual(&p, &mesh, &sp(t, gamma, eps), &y);
            for i in 1..4 {
                let z0 = beta * mesh.h(i - 1);
                let z1 = beta * mesh.h(i);
                let w0 = ((1.0 - t) * z0.cosh() + t) / z0.sinh();
                let w1 = ((1.0 - t) * z1.cosh() + t) / z1.sinh();
                let a0 = (z0.cosh() - 1.0) / z0.sinh();
                let a1 = (z1.cosh() - 1.0) / z1.sinh();
                let x = mesh.points();
                let f0 = p.f(x[i - 1], y[i - 1]);
                let f1 = p.f(x[i], y[i]);
                let f2 = p.f(x[i + 1], y[i + 1]);
                let raw = gamma / (a0 + a1)
                    * (w0 * (y[i - 1] - y[i])
                        - w1 * (y[i] - y[i + 1])
                        - ((1.0 - t) * f0 + t * f1) / gamma * a0
                        - (t * f1 + (1.0 - t) * f2) / gamma * a1);
                assert!(
                    (r[i] - raw).abs() <= 1e-12 * (1.0 + raw.abs()),
                    "t = {t}, i = {i}: {} vs {raw}",
                    r[i]
                );
            }
        }
    }

    #[test]
    fn residual_at_exact_nodes_shrinks_quadratically() {
        // consistency error of the scheme at the exact solution;
        // frozen leading value, ~4x shrink per refinement
        let eps = 2.0f64.powi(-10);
        let p = Problem::builtin_example1(eps);
        let mut norms = Vec::new();
        for n in [64usize, 128, 256] {
            let mesh = build_mesh(
                MeshKind::ShishkinMod,
                n,
                eps,
                p.m(),
                &MeshOverrides::default(),
            )
            .unwrap();
            let y: Vec<f64> = mesh.points().iter().map(|&x| p.exact(x).unwrap()).collect();
            let r = residual(&p, &mesh, &sp(0.5, 1.0, eps), &y);
            norms.push(r.iter().fold(0.0f64, |m, &v| m.max(v.abs())));
        }
        assert!((norms[0] - 3.532_717e-2).abs() < 1e-4 * norms[0]);
        assert!(norms[0] / norms[1] > 3.2 && norms[0] / norms[1] < 4.6);
        assert!(norms[1] / norms[2] > 3.2 && norms[1] / norms[2] < 4.6);
    }

    #[test]
    fn residual_shifts_by_constant_added_to_f() {
        let eps = 2.0f64.powi(-3);
        let kappa = 0.7;
        let base = Problem::builtin_example1(eps);
        let shifted = Problem::new(
            "shifted",
            eps,
            move |x: f64, y: f64| {
                y + (std::f64::consts::PI * x).cos().powi(2)
                    + 2.0
                        * eps
                        * eps
                        * std::f64::consts::PI
                        * std::f64::consts::PI
                        * (2.0 * std::f64::consts::PI * x).cos()
                    + kappa
            },
            |_x, _y| 1.0,
            1.0,
            1.0,
        );
        let mesh =
            build_mesh(MeshKind::Bakhvalov, 16, eps, 1.0, &MeshOverrides::default()).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        let y: Vec<f64> = (0..17).map(|_| rng.random_range(-1.0..1.0)).collect();
        let params = sp(0.3, 1.0, eps);
        let r0 = residual(&base, &mesh, &params, &y);
        let r1 = residual(&shifted, &mesh, &params, &y);
        assert_eq!(r1[0], r0[0]);
        assert_eq!(r1[16], r0[16]);
        for i in 1..16 {
            assert!(
                (r1[i] - (r0[i] - kappa)).abs() <= 1e-12 * (1.0 + kappa + r0[i].abs()),
                "i = {i}"
            );
        }
    }

    #[test]
    fn jacobian_matches_forward_difference() {
        let eps = 2.0f64.powi(-3);
        let p = Problem::builtin_example1(eps);
        let mut rng = StdRng::seed_from_u64(23);
        for kind in ALL_MESH_KINDS {
            let mesh = build_mesh(kind, 16, eps, p.m(), &MeshOverrides::default()).unwrap();
            for t in [0.0, 0.5, 1.0] {
                let params = sp(t, 1.0, eps);
                let y: Vec<f64> = (0..17).map(|_| rng.random_range(-1.0..1.0)).collect();
                let h = jacobian(&p, &mesh, &params, &y);
                let r0 = residual(&p, &mesh, &params, &y);
                let delta = 1e-7;
                for _ in 0..10 {
                    let j = rng.random_range(0..17);
                    let mut yj = y.clone();
                    yj[j] += delta;
                    let rj = residual(&p, &mesh, &params, &yj);
                    // column j of H: H[j-1,j] = sup[j-1], H[j,j] = diag[j],
                    // H[j+1,j] = sub[j]
                    let mut col = [0.0; 17];
                    if j > 0 {
                        col[j - 1] = h.sup[j - 1];
                    }
                    col[j] = h.diag[j];
                    if j < 16 {
                        col[j + 1] = h.sub[j];
                    }
                    let scale = col.iter().fold(1.0f64, |m, &v| m.max(v.abs()));
                    for i in 0..17 {
                        let fd = (rj[i] - r0[i]) / delta;
                        assert!(
                            (fd - col[i]).abs() <= 1e-6 * scale,
                            "{kind} t={t} col {j} row {i}: fd {fd} vs {}",
                            col[i]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn jacobian_has_m_matrix_signs_for_builtin() {
        // moderate beta*h: strict positivity of the off-diagonals
        let eps = 2.0f64.powi(-3);
        let p = Problem::builtin_example1(eps);
        for kind in ALL_MESH_KINDS {
            let mesh = build_mesh(kind, 16, eps, p.m(), &MeshOverrides::default()).unwrap();
            let y = vec![-0.5; 17];
            for t in [0.0, 0.5, 1.0] {
                let h = jacobian(&p, &mesh, &sp(t, 1.0, eps), &y);
                for i in 1..16 {
                    assert!(h.sub[i - 1] > 0.0, "{kind} t={t} row {i}");
                    assert!(h.sup[i] > 0.0, "{kind} t={t} row {i}");
                    assert!(h.diag[i] < 0.0, "{kind} t={t} row {i}");
                }
                let report = check_m_matrix(&h, p.m());
                assert!(report.pass, "{kind} t={t}: {:?}", report.reason);
            }
        }
    }

    #[test]
    fn dominance_margin_is_one_when_fy_is_one() {
        // the margin is a convex combination of f_y values, which is
        // identically 1 for the builtin problem, on every mesh and t --
        // including tiny eps where the kernels saturate and off-diagonals
        // underflow to exactly zero
        let eps = 2.0f64.powi(-20);
        let p = Problem::builtin_example1(eps);
        for kind in ALL_MESH_KINDS {
            let mesh = build_mesh(kind, 16, eps, p.m(), &MeshOverrides::default()).unwrap();
            let y = vec![-0.5; 17];
            for t in [0.0, 0.5, 1.0] {
                let h = jacobian(&p, &mesh, &sp(t, 1.0, eps), &y);
                for i in 1..16 {
                    assert!(h.sub[i - 1] >= 0.0);
                    assert!(h.sup[i] >= 0.0);
                }
                let report = check_m_matrix(&h, 1.0);
                assert!(report.pass, "{kind} t={t}: {:?}", report.reason);
                assert!(
                    (report.margin - 1.0).abs() < 1e-12,
                    "{kind} t={t}: {}",
                    report.margin
                );
            }
        }
    }

    #[test]
    fn check_m_matrix_names_offending_row() {
        let eps = 2.0f64.powi(-3);
        let p = Problem::builtin_example1(eps);
        let mesh = build_mesh(
            MeshKind::Shishkin,
            16,
            eps,
            p.m(),
            &MeshOverrides::default(),
        )
        .unwrap();
        let mut h = jacobian(&p, &mesh, &sp(0.5, 1.0, eps), &[-0.5; 17]);
        h.sub[4] = -h.sub[4]; // corrupt row 5's sub-diagonal entry
        let report = check_m_matrix(&h, 1.0);
        assert!(!report.pass);
        assert_eq!(report.offending_row, Some(5));
        assert!(report.reason.unwrap().contains("sub-diagonal"));
    }

    #[test]
    fn check_m_matrix_rejects_undersized_gamma() {
        // gamma = 0.5 < f_y = 1 breaks the sign pattern in the strongly
        // layer-resolving regime
        let eps = 2.0f64.powi(-10);
        let p = Problem::builtin_example1(eps);
        let mesh = build_mesh(
            MeshKind::ShishkinMod,
            64,
            eps,
            p.m(),
            &MeshOverrides::default(),
        )
        .unwrap();
        let h = jacobian(&p, &mesh, &sp(0.5, 0.5, eps), &vec![-0.5; 65]);
        let report = check_m_matrix(&h, p.m());
        assert!(!report.pass);
        assert!(report.offending_row.is_some());
    }

    #[test]
    fn t_one_specialization_drops_flux_kernel_b() {
        let eps = 2.0f64.powi(-3);
        let p = Problem::builtin_example1(eps);
        let mesh = build_mesh(
            MeshKind::ShishkinMod,
            16,
            eps,
            p.m(),
            &MeshOverrides::default(),
        )
        .unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        let y: Vec<f64> = (0..17).map(|_| rng.random_range(-1.0..1.0)).collect();
        let gamma = 1.0;
        let params = sp(1.0, gamma, eps);
        let r = residual(&p, &mesh, &params, &y);
        let x = mesh.points();
        for i in 1..16 {
            let (a0, _, c0) = kernels(params.beta(), mesh.h(i - 1));
            let (a1, _, c1) = kernels(params.beta(), mesh.h(i));
            let special = gamma / (a0 + a1) * (c0 * (y[i - 1] - y[i]) - c1 * (y[i] - y[i + 1]))
                - p.f(x[i], y[i]);
            assert!(
                (r[i] - special).abs() <= 1e-14 * (1.0 + special.abs()),
                "i = {i}: {} vs {special}",
                r[i]
            );
        }
    }

    #[test]
    fn tridiagonal_mul_against_hand_product() {
        let h = Tridiagonal {
            sub: vec![1.0, 2.0],
            diag: vec![-4.0, -5.0, -6.0],
            sup: vec![3.0, 1.0],
        };
        let v = [1.0, -1.0, 2.0];
        assert_eq!(h.mul(&v), vec![-7.0, 8.0, -14.0]);
    }
}
