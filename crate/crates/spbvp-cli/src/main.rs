//! Command-line front end: single solves, mesh dumps, and convergence
//! sweeps with CSV or Markdown output.
//!
//! Exit codes: 0 success, 2 invalid arguments or I/O failure, 3 solver
//! non-convergence (or an all-failed sweep), 4 stability check failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spbvp::{
    build_mesh, newton_solve, run_convergence, ConvergenceReport, DiscreteSolution, Error,
    GlobalSolution, Initial, MeshKind, MeshOverrides, Problem, ReportMeta, SchemeParams,
    SolverConfig, SplineKind, SweepConfig,
};

#[derive(Parser)]
#[command(
    name = "spbvp",
    version,
    about = "Fitted finite-difference solver for singularly perturbed \
             reaction-diffusion boundary value problems eps^2 y'' = f(x, y), \
             y(0) = y(1) = 0"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one problem instance and report nodal errors
    Solve(SolveArgs),
    /// Run an eps x N refinement sweep and print the error table
    Convergence(ConvergenceArgs),
    /// Generate a layer-adapted mesh and dump its points
    Mesh(MeshArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Problem id (available: builtin:example1)
    #[arg(long, default_value = "builtin:example1")]
    problem: String,
    /// Mesh kind: shishkin | shishkin-mod | bakhvalov | liseikin
    #[arg(long)]
    mesh: String,
    /// Perturbation parameter; accepts a decimal or a 2^-k literal
    #[arg(long)]
    eps: String,
    /// Number of mesh intervals (multiple of 4, at least 8)
    #[arg(long = "N")]
    n: usize,
    /// Scheme family parameter in [0, 1]
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    t: f64,
    /// Fitting constant; defaults to the problem's own value
    #[arg(long)]
    gamma: Option<f64>,
    /// Newton stopping tolerance on the max-norm correction
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Newton iteration cap
    #[arg(long, default_value_t = 50)]
    maxit: usize,
    /// Constant initial guess for the Newton iteration
    #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
    init: f64,
    /// Global solution to sample: linear | cubic | none
    #[arg(long, default_value = "none")]
    spline: String,
    /// Dense sample points per mesh interval for the spline CSV
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Write the nodal CSV here (the dense CSV goes to the same path
    /// with a .dense.csv extension); without this no files are written
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    /// Problem id (available: builtin:example1)
    #[arg(long, default_value = "builtin:example1")]
    problem: String,
    /// Mesh kind or `all` for one block per kind
    #[arg(long, default_value = "all")]
    mesh: String,
    /// Smallest refinement level (N = 2^kmin)
    #[arg(long, default_value_t = 4)]
    kmin: u32,
    /// Largest refinement level (N = 2^kmax)
    #[arg(long, default_value_t = 12)]
    kmax: u32,
    /// Comma-separated eps values (decimals or 2^-k literals)
    #[arg(long = "eps-list", default_value = "2^-3,2^-5,2^-10,2^-20,2^-30,2^-40")]
    eps_list: String,
    /// Scheme family parameter in [0, 1]
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    t: f64,
    /// Table format: csv | markdown
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write the table here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MeshArgs {
    /// Mesh kind: shishkin | shishkin-mod | bakhvalov | liseikin
    #[arg(long)]
    kind: String,
    /// Perturbation parameter; accepts a decimal or a 2^-k literal
    #[arg(long)]
    eps: String,
    /// Number of mesh intervals (multiple of 4, at least 8)
    #[arg(long = "N")]
    n: usize,
    /// Reaction lower bound used by the transition point
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Grading constant (Bakhvalov and Liseikin meshes)
    #[arg(long)]
    a: Option<f64>,
    /// Mesh fraction entering the layer (Bakhvalov mesh)
    #[arg(long)]
    q: Option<f64>,
    /// Layer-width exponent n (Liseikin mesh)
    #[arg(long = "lis-n")]
    lis_n: Option<f64>,
    /// Contraction exponent k (Liseikin mesh)
    #[arg(long = "lis-k")]
    lis_k: Option<f64>,
    /// Cubic tail coefficient c0 (Liseikin mesh)
    #[arg(long = "lis-c0")]
    lis_c0: Option<f64>,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with its process exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::InvalidMeshSize(_)
            | Error::InvalidParameter(_)
            | Error::NoExactSolution(_)
            | Error::OutOfDomain(_) => 2,
            Error::NoConvergence { .. } | Error::SingularSystem(_) => 3,
            Error::Unstable(_) => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Solve(args) => cmd_solve(&args),
        Cmd::Convergence(args) => cmd_convergence(&args),
        Cmd::Mesh(args) => cmd_mesh(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Accepts `2^-k` literals alongside plain decimals.
fn parse_eps(s: &str) -> Result<f64, Failure> {
    let value = if let Some(exp) = s.strip_prefix("2^") {
        let k: i32 = exp
            .parse()
            .map_err(|_| Failure::invalid(format!("bad exponent in eps literal '{s}'")))?;
        2.0f64.powi(k)
    } else {
        s.parse::<f64>()
            .map_err(|_| Failure::invalid(format!("eps '{s}' is not a number or 2^-k literal")))?
    };
    if !value.is_finite() || value <= 0.0 {
        return Err(Failure::invalid(format!("eps must be positive, got {s}")));
    }
    Ok(value)
}

fn parse_mesh_kind(s: &str) -> Result<MeshKind, Failure> {
    s.parse::<MeshKind>().map_err(Failure::from)
}

fn make_problem(id: &str, eps: f64) -> Result<Problem, Failure> {
    match id {
        "builtin:example1" => Ok(Problem::builtin_example1(eps)),
        other => Err(Failure::invalid(format!(
            "unknown problem id '{other}' (available: builtin:example1)"
        ))),
    }
}

fn write_output(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))
}

fn cmd_solve(args: &SolveArgs) -> Result<(), Failure> {
    let eps = parse_eps(&args.eps)?;
    let kind = parse_mesh_kind(&args.mesh)?;
    let spline = match args.spline.as_str() {
        "none" => None,
        other => Some(other.parse::<SplineKind>().map_err(Failure::from)?),
    };
    let p = make_problem(&args.problem, eps)?;
    let mesh = build_mesh(kind, args.n, eps, p.m(), &MeshOverrides::default())?;
    let sp = SchemeParams::new(args.t, args.gamma.unwrap_or_else(|| p.gamma_default()), eps)?;
    let cfg = SolverConfig {
        tol: args.tol,
        max_iterations: args.maxit,
        initial: Initial::Constant(args.init),
        strict: true,
        line_search: false,
    };
    let sol = newton_solve(&p, &mesh, &sp, &cfg)?;
    if !sol.converged {
        return Err(Failure {
            code: 3,
            message: format!(
                "Newton did not converge within {} iterations (last correction {:.3e})",
                sol.iterations, sol.final_correction
            ),
        });
    }
    if p.has_exact() {
        println!("E_N = {:.3e}", spbvp::discrete_error(&sol, &p)?);
    }
    println!("iterations = {}", sol.iterations);
    let global = spline.map(|kind| match kind {
        SplineKind::Linear => spbvp::linear_spline(&sol),
        SplineKind::Cubic => spbvp::cubic_spline(&sol),
    });
    if let Some(g) = &global {
        if p.has_exact() {
            println!(
                "global_E_N = {:.3e}",
                spbvp::global_error(g, &p, args.samples)?
            );
        }
    }
    if let Some(out) = &args.out {
        write_output(out, &nodal_csv(&sol, &p))?;
        eprintln!("nodal values written to {}", out.display());
        if let Some(g) = &global {
            let dense_path = out.with_extension("dense.csv");
            write_output(&dense_path, &dense_csv(g, &p, args.samples)?)?;
            eprintln!("dense samples written to {}", dense_path.display());
        }
    }
    Ok(())
}

fn nodal_csv(sol: &DiscreteSolution, p: &Problem) -> String {
    let with_exact = p.has_exact();
    let mut out = String::from(if with_exact {
        "i,x,y_num,y_exact,abs_err\n"
    } else {
        "i,x,y_num\n"
    });
    for (i, (&x, &y)) in sol.mesh.points().iter().zip(&sol.values).enumerate() {
        if with_exact {
            let ex = p.exact(x).unwrap();
            out.push_str(&format!("{i},{x},{y},{ex},{}\n", (y - ex).abs()));
        } else {
            out.push_str(&format!("{i},{x},{y}\n"));
        }
    }
    out
}

fn dense_csv(g: &GlobalSolution, p: &Problem, samples: usize) -> Result<String, Failure> {
    let with_exact = p.has_exact();
    let mut out = String::from(if with_exact {
        "x,P,exact,abs_err\n"
    } else {
        "x,P\n"
    });
    for x in spbvp::dense_points(&g.knots, samples) {
        let val = g.eval(x)?;
        if with_exact {
            let ex = p.exact(x).unwrap();
            out.push_str(&format!("{x},{val},{ex},{}\n", (val - ex).abs()));
        } else {
            out.push_str(&format!("{x},{val}\n"));
        }
    }
    Ok(out)
}

fn cmd_convergence(args: &ConvergenceArgs) -> Result<(), Failure> {
    let kinds: Vec<MeshKind> = if args.mesh == "all" {
        spbvp::mesh::ALL_MESH_KINDS.to_vec()
    } else {
        vec![parse_mesh_kind(&args.mesh)?]
    };
    if args.kmin < 2 || args.kmin > args.kmax || args.kmax > 26 {
        return Err(Failure::invalid(format!(
            "need 2 <= kmin <= kmax <= 26, got kmin={} kmax={}",
            args.kmin, args.kmax
        )));
    }
    let eps_list = args
        .eps_list
        .split(',')
        .map(|s| parse_eps(s.trim()))
        .collect::<Result<Vec<f64>, Failure>>()?;
    if eps_list.is_empty() {
        return Err(Failure::invalid("eps-list is empty"));
    }
    make_problem(&args.problem, eps_list[0])?; // fail early on a bad id
    let problem_id = args.problem.clone();
    let mut rows = Vec::new();
    let mut meta: Option<ReportMeta> = None;
    for kind in kinds {
        let cfg = SweepConfig {
            kind,
            overrides: MeshOverrides::default(),
            k_min: args.kmin,
            k_max: args.kmax,
            eps_list: eps_list.clone(),
            t: args.t,
            gamma: None,
            solver: SolverConfig {
                initial: Initial::Constant(-0.5),
                strict: true,
                ..SolverConfig::default()
            },
            global: None,
        };
        let report = run_convergence(|eps| make_problem(&problem_id, eps).unwrap(), &cfg);
        meta.get_or_insert(report.meta);
        rows.extend(report.rows);
    }
    for row in &rows {
        if let Some(note) = &row.note {
            eprintln!(
                "note: {} eps={} N={}: {note}",
                row.mesh,
                spbvp::format_eps(row.eps),
                row.n
            );
        }
    }
    let succeeded = rows.iter().filter(|r| r.e_n.is_some()).count();
    let report = ConvergenceReport {
        rows,
        meta: meta.unwrap(),
        has_global: false,
    };
    let table = match args.format.as_str() {
        "csv" => report.to_csv(),
        "markdown" => report.to_markdown(),
        other => {
            return Err(Failure::invalid(format!(
                "unknown format '{other}' (available: csv, markdown)"
            )))
        }
    };
    match &args.out {
        Some(path) => {
            write_output(path, &table)?;
            eprintln!("table written to {}", path.display());
        }
        None => print!("{table}"),
    }
    if succeeded == 0 {
        return Err(Failure {
            code: 3,
            message: "no sweep row succeeded (see notes above)".into(),
        });
    }
    Ok(())
}

fn cmd_mesh(args: &MeshArgs) -> Result<(), Failure> {
    let eps = parse_eps(&args.eps)?;
    let kind = parse_mesh_kind(&args.kind)?;
    if !args.m.is_finite() || args.m <= 0.0 {
        return Err(Failure::invalid(format!(
            "m must be positive, got {}",
            args.m
        )));
    }
    let overrides = MeshOverrides {
        a: args.a,
        q: args.q,
        n: args.lis_n,
        k: args.lis_k,
        c0: args.lis_c0,
    };
    let mesh = build_mesh(kind, args.n, eps, args.m, &overrides)?;
    match mesh.params() {
        spbvp::MeshParams::Shishkin { lambda } => eprintln!("lambda = {lambda}"),
        spbvp::MeshParams::ShishkinMod { lambda, p } => {
            eprintln!("lambda = {lambda}");
            eprintln!("p = {p}");
        }
        spbvp::MeshParams::Bakhvalov { a, q, alpha } => {
            eprintln!("a = {a}");
            eprintln!("q = {q}");
            eprintln!("alpha = {alpha}");
        }
        spbvp::MeshParams::Liseikin { d, c1, .. } => {
            eprintln!("d = {d}");
            eprintln!("c1 = {c1}");
        }
    }
    let pts = mesh.points();
    let mut csv = String::from("i,x_i,h_i\n");
    for (i, &x) in pts.iter().enumerate() {
        if i + 1 < pts.len() {
            csv.push_str(&format!("{i},{x},{}\n", pts[i + 1] - x));
        } else {
            csv.push_str(&format!("{i},{x},\n"));
        }
    }
    match &args.out {
        Some(path) => {
            write_output(path, &csv)?;
            eprintln!("mesh written to {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}
