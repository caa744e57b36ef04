//! Browser bindings for the spbvp solver: mesh generation, single solves,
//! and convergence sweeps exposed as JSON-returning functions.
//!
//! Every function returns a JSON string; failures come back as
//! `{"error": "..."}` so callers never deal with exceptions.

use serde_json::json;
use wasm_bindgen::prelude::*;

use spbvp::{
    build_mesh, newton_solve, run_convergence, Initial, MeshKind, MeshOverrides, MeshParams,
    Problem, SchemeParams, SolverConfig, SweepConfig,
};

fn error_json(msg: &str) -> String {
    json!({ "error": msg }).to_string()
}

fn finish(result: Result<serde_json::Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(msg) => error_json(&msg),
    }
}

fn parse_kind(kind: &str) -> Result<MeshKind, String> {
    kind.parse::<MeshKind>().map_err(|e| e.to_string())
}

fn diagnostics(params: &MeshParams) -> serde_json::Value {
    match *params {
        MeshParams::Shishkin { lambda } => json!({ "lambda": lambda }),
        MeshParams::ShishkinMod { lambda, p } => json!({ "lambda": lambda, "p": p }),
        MeshParams::Bakhvalov { a, q, alpha } => json!({ "a": a, "q": q, "alpha": alpha }),
        MeshParams::Liseikin { d, c1, .. } => json!({ "d": d, "c1": c1 }),
    }
}

/// Layer-adapted mesh points with the generator's diagnostics.
#[wasm_bindgen]
pub fn mesh_json(kind: &str, eps: f64, n: u32) -> String {
    finish((|| {
        let kind = parse_kind(kind)?;
        let mesh = build_mesh(kind, n as usize, eps, 1.0, &MeshOverrides::default())
            .map_err(|e| e.to_string())?;
        Ok(json!({
            "kind": kind.as_str(),
            "points": mesh.points(),
            "diagnostics": diagnostics(mesh.params()),
        }))
    })())
}

/// Solves the builtin two-layer problem and returns nodal values, a dense
/// cubic-spline trace for plotting, the exact solution, and the error.
#[wasm_bindgen]
pub fn solve_json(kind: &str, eps: f64, n: u32, t: f64) -> String {
    finish((|| {
        let kind = parse_kind(kind)?;
        let p = Problem::builtin_example1(eps);
        let mesh = build_mesh(kind, n as usize, eps, p.m(), &MeshOverrides::default())
            .map_err(|e| e.to_string())?;
        let sp = SchemeParams::new(t, p.gamma_default(), eps).map_err(|e| e.to_string())?;
        let cfg = SolverConfig {
            initial: Initial::Constant(-0.5),
            strict: true,
            ..SolverConfig::default()
        };
        let sol = newton_solve(&p, &mesh, &sp, &cfg).map_err(|e| e.to_string())?;
        if !sol.converged {
            return Err(format!(
                "no convergence within {} iterations",
                sol.iterations
            ));
        }
        let e_n = spbvp::discrete_error(&sol, &p).map_err(|e| e.to_string())?;
        let spline = spbvp::cubic_spline(&sol);
        let dense_x = spbvp::dense_points(&spline.knots, 8);
        let dense_p: Vec<f64> = dense_x.iter().map(|&x| spline.eval(x).unwrap()).collect();
        let dense_exact: Vec<f64> = dense_x.iter().map(|&x| p.exact(x).unwrap()).collect();
        Ok(json!({
            "x": sol.mesh.points(),
            "y": sol.values,
            "e_n": e_n,
            "iterations": sol.iterations,
            "dense_x": dense_x,
            "dense_p": dense_p,
            "dense_exact": dense_exact,
        }))
    })())
}

/// Refinement sweep on the builtin problem at one eps: rows of
/// (N, E_N, Ord, iterations), with nulls for cells that do not exist.
#[wasm_bindgen]
pub fn convergence_json(kind: &str, eps: f64, t: f64, kmin: u32, kmax: u32) -> String {
    finish((|| {
        let kind = parse_kind(kind)?;
        if kmin < 2 || kmin > kmax || kmax > 14 {
            return Err(format!("need 2 <= kmin <= kmax <= 14, got {kmin}..{kmax}"));
        }
        let cfg = SweepConfig {
            kind,
            k_min: kmin,
            k_max: kmax,
            eps_list: vec![eps],
            t,
            solver: SolverConfig {
                initial: Initial::Constant(-0.5),
                strict: true,
                ..SolverConfig::default()
            },
            ..SweepConfig::default()
        };
        let report = run_convergence(Problem::builtin_example1, &cfg);
        let rows: Vec<serde_json::Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "e_n": r.e_n,
                    "ord": r.ord,
                    "iterations": r.iterations,
                    "note": r.note,
                })
            })
            .collect();
        Ok(json!({ "kind": kind.as_str(), "eps": eps, "rows": rows }))
    })())
}
