use crate::error::{Error, Result};
use crate::mesh::{build_mesh, MeshKind, MeshOverrides};
use crate::problem::Problem;
use crate::scheme::SchemeParams;
use crate::solver::{newton_solve, DiscreteSolution, Initial, SolverConfig};
use crate::spline::{
    cubic_from_nodes, dense_points, linear_from_nodes, GlobalSolution, SplineKind,
};

/// Max-norm nodal error against the problem's exact solution.
pub fn discrete_error(sol: &DiscreteSolution, p: &Problem) -> Result<f64> {
    if !p.has_exact() {
        return Err(Error::NoExactSolution(p.name().to_string()));
    }
    Ok(sol
        .mesh
        .points()
        .iter()
        .zip(&sol.values)
        .fold(0.0f64, |m, (&x, &y)| m.max((p.exact(x).unwrap() - y).abs())))
}

/// Max-norm error of a global solution over a dense sample grid with
/// `per_interval` points per mesh interval.
pub fn global_error(g: &GlobalSolution, p: &Problem, per_interval: usize) -> Result<f64> {
    if !p.has_exact() {
        return Err(Error::NoExactSolution(p.name().to_string()));
    }
    Ok(dense_points(&g.knots, per_interval)
        .iter()
        .fold(0.0f64, |m, &x| {
            m.max((g.eval(x).unwrap() - p.exact(x).unwrap()).abs())
        }))
}

/// Experimental convergence order from errors at N = 2^k and 2N.
///
/// Shishkin-family meshes carry a logarithmic factor, so their order is
/// measured against ln(2k/(k+1)); the graded Bakhvalov and Liseikin
/// meshes use plain ln 2. Returns None when either error is nonpositive
/// or k < 2.
pub fn conv_order(e_n: f64, e_2n: f64, k: u32, kind: MeshKind) -> Option<f64> {
    let usable = |e: f64| e.is_finite() && e > 0.0;
    if !usable(e_n) || !usable(e_2n) || k < 2 {
        return None;
    }
    let denom = match kind {
        MeshKind::Shishkin | MeshKind::ShishkinMod => (2.0 * k as f64 / (k as f64 + 1.0)).ln(),
        MeshKind::Bakhvalov | MeshKind::Liseikin => 2.0f64.ln(),
    };
    Some((e_n / e_2n).ln() / denom)
}

/// One (eps, N) cell of a convergence study.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub mesh: MeshKind,
    pub eps: f64,
    pub n: usize,
    /// Nodal max-norm error; None when the row failed.
    pub e_n: Option<f64>,
    /// Order estimate paired with the next finer row of the same eps.
    pub ord: Option<f64>,
    pub iterations: Option<usize>,
    /// Dense spline error, when the sweep asked for one.
    pub global_e: Option<f64>,
    /// Failure description for rows that could not produce an error.
    pub note: Option<String>,
}

/// Parameters echoed with a report.
#[derive(Debug, Clone)]
pub struct ReportMeta {
    pub kind: MeshKind,
    pub t: f64,
    pub gamma: Option<f64>,
    pub tol: f64,
}

/// All rows of an eps x N sweep, eps outermost, N = 2^k ascending within
/// each eps.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub meta: ReportMeta,
    /// Whether rows carry the dense spline-error column.
    pub has_global: bool,
}

/// Controls for `run_convergence`.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub kind: MeshKind,
    pub overrides: MeshOverrides,
    /// N runs over 2^k for k in k_min..=k_max.
    pub k_min: u32,
    pub k_max: u32,
    pub eps_list: Vec<f64>,
    /// Scheme family parameter.
    pub t: f64,
    /// Fitting constant; None takes each problem's default.
    pub gamma: Option<f64>,
    pub solver: SolverConfig,
    /// Also report dense global errors: spline kind and samples per
    /// interval.
    pub global: Option<(SplineKind, usize)>,
}

impl Default for SweepConfig {
    fn default() -> SweepConfig {
        SweepConfig {
            kind: MeshKind::Shishkin,
            overrides: MeshOverrides::default(),
            k_min: 4,
            k_max: 12,
            eps_list: vec![
                2.0f64.powi(-3),
                2.0f64.powi(-5),
                2.0f64.powi(-10),
                2.0f64.powi(-20),
                2.0f64.powi(-30),
                2.0f64.powi(-40),
            ],
            t: 0.5,
            gamma: None,
            solver: SolverConfig {
                initial: Initial::Constant(-0.5),
                ..SolverConfig::default()
            },
            global: None,
        }
    }
}

/// Runs the sweep: for every eps and N builds the mesh, solves, and
/// records errors; order estimates are filled in from adjacent rows.
/// Failures (mesh parameters out of range, non-convergence, missing exact
/// solution) are recorded in the row's note and the sweep continues.
pub fn run_convergence(
    make_problem: impl Fn(f64) -> Problem,
    cfg: &SweepConfig,
) -> ConvergenceReport {
    assert!(cfg.k_min >= 2 && cfg.k_min <= cfg.k_max);
    let mut rows = Vec::new();
    for &eps in &cfg.eps_list {
        let p = make_problem(eps);
        let gamma = cfg.gamma.unwrap_or_else(|| p.gamma_default());
        let group_start = rows.len();
        for k in cfg.k_min..=cfg.k_max {
            let n = 1usize << k;
            rows.push(sweep_row(&p, cfg, eps, gamma, n));
        }
        // pair each row with its finer neighbor for the order estimate
        for (offset, k) in (cfg.k_min..cfg.k_max).enumerate() {
            let i = group_start + offset;
            if let (Some(e_n), Some(e_2n)) = (rows[i].e_n, rows[i + 1].e_n) {
                rows[i].ord = conv_order(e_n, e_2n, k, cfg.kind);
            }
        }
    }
    ConvergenceReport {
        rows,
        meta: ReportMeta {
            kind: cfg.kind,
            t: cfg.t,
            gamma: cfg.gamma,
            tol: cfg.solver.tol,
        },
        has_global: cfg.global.is_some(),
    }
}

fn sweep_row(p: &Problem, cfg: &SweepConfig, eps: f64, gamma: f64, n: usize) -> ConvergenceRow {
    let mut row = ConvergenceRow {
        mesh: cfg.kind,
        eps,
        n,
        e_n: None,
        ord: None,
        iterations: None,
        global_e: None,
        note: None,
    };
    let fail = |row: &mut ConvergenceRow, what: String| row.note = Some(what);
    let mesh = match build_mesh(cfg.kind, n, eps, p.m(), &cfg.overrides) {
        Ok(m) => m,
        Err(e) => {
            fail(&mut row, e.to_string());
            return row;
        }
    };
    let sp = match SchemeParams::new(cfg.t, gamma, eps) {
        Ok(s) => s,
        Err(e) => {
            fail(&mut row, e.to_string());
            return row;
        }
    };
    let sol = match newton_solve(p, &mesh, &sp, &cfg.solver) {
        Ok(s) => s,
        Err(e) => {
            fail(&mut row, e.to_string());
            return row;
        }
    };
    row.iterations = Some(sol.iterations);
    if !sol.converged {
        fail(
            &mut row,
            format!("no convergence after {} iterations", sol.iterations),
        );
        return row;
    }
    match discrete_error(&sol, p) {
        Ok(e) => row.e_n = Some(e),
        Err(e) => {
            fail(&mut row, e.to_string());
            return row;
        }
    }
    if let Some((kind, per_interval)) = cfg.global {
        let g = match kind {
            SplineKind::Linear => linear_from_nodes(sol.mesh.points(), &sol.values),
            SplineKind::Cubic => cubic_from_nodes(sol.mesh.points(), &sol.values),
        };
        // exact solution already verified present by discrete_error
        row.global_e = Some(global_error(&g, p, per_interval).unwrap());
    }
    row
}

/// Prints eps as `2^-k` when it is exactly a (normal) power of two,
/// otherwise as a plain decimal.
pub fn format_eps(eps: f64) -> String {
    let bits = eps.to_bits();
    let mantissa = bits & 0x000F_FFFF_FFFF_FFFF;
    let exp_bits = (bits >> 52) & 0x7FF;
    if eps > 0.0 && mantissa == 0 && exp_bits != 0 && exp_bits != 0x7FF {
        format!("2^{}", exp_bits as i64 - 1023)
    } else {
        format!("{eps}")
    }
}

fn row_cells(row: &ConvergenceRow, has_global: bool) -> Vec<String> {
    let mut cells = vec![
        row.mesh.as_str().to_string(),
        format_eps(row.eps),
        row.n.to_string(),
        row.e_n.map_or(String::new(), |e| format!("{e:.3e}")),
        row.ord.map_or(String::new(), |o| format!("{o:.2}")),
        row.iterations.map_or(String::new(), |i| i.to_string()),
    ];
    if has_global {
        cells.push(row.global_e.map_or(String::new(), |e| format!("{e:.3e}")));
    }
    cells
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("mesh,eps,N,E_N,Ord,iters");
        if self.has_global {
            out.push_str(",global_E_N");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row_cells(row, self.has_global).join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut header = vec!["mesh", "eps", "N", "E_N", "Ord", "iters"];
        if self.has_global {
            header.push("global_E_N");
        }
        let mut out = format!("| {} |\n", header.join(" | "));
        out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
        for row in &self.rows {
            out.push_str(&format!(
                "| {} |\n",
                row_cells(row, self.has_global).join(" | ")
            ));
        }
        out
    }
}
