//! End-to-end tests of the `spbvp` binary: output formats, exit codes,
//! and CSV round-trips.

use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spbvp"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    )
}

fn tmp_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn solve_prints_error_and_iterations() {
    let (code, stdout, _) = run(&[
        "solve",
        "--problem",
        "builtin:example1",
        "--mesh",
        "shishkin",
        "--eps",
        "2^-10",
        "--N",
        "128",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("E_N = 1.192e-3"), "{stdout}");
    assert!(stdout.contains("iterations = 2"), "{stdout}");
}

#[test]
fn solve_accepts_eps_literal_and_decimal_identically() {
    let (c1, out1, _) = run(&["solve", "--mesh", "liseikin", "--eps", "2^-3", "--N", "32"]);
    let (c2, out2, _) = run(&["solve", "--mesh", "liseikin", "--eps", "0.125", "--N", "32"]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2);
}

#[test]
fn solve_writes_round_trippable_csvs() {
    let nodal = tmp_path("nodal.csv");
    let (code, stdout, _) = run(&[
        "solve",
        "--mesh",
        "shishkin-mod",
        "--eps",
        "2^-10",
        "--N",
        "64",
        "--spline",
        "cubic",
        "--samples",
        "4",
        "--out",
        nodal.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("global_E_N = "), "{stdout}");

    let text = std::fs::read_to_string(&nodal).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,x,y_num,y_exact,abs_err");
    assert_eq!(lines.len(), 66); // header + 65 nodes
    assert_eq!(lines[1], "0,0,0,0,0");
    let mut prev_x = -1.0f64;
    for (row, line) in lines[1..].iter().enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 5);
        assert_eq!(cells[0].parse::<usize>().unwrap(), row);
        for cell in &cells[1..] {
            // full printed precision: parsing and re-printing reproduces
            // the cell exactly
            let v: f64 = cell.parse().unwrap();
            assert_eq!(&format!("{v}"), cell);
        }
        let x: f64 = cells[1].parse().unwrap();
        assert!(x > prev_x);
        prev_x = x;
    }
    assert_eq!(prev_x, 1.0);

    let dense = std::fs::read_to_string(nodal.with_extension("dense.csv")).unwrap();
    let lines: Vec<&str> = dense.lines().collect();
    assert_eq!(lines[0], "x,P,exact,abs_err");
    assert_eq!(lines.len(), 2 + 64 * 4); // header + 4 per interval + endpoint
    assert!(lines[1].starts_with("0,"));
    assert!(lines.last().unwrap().starts_with("1,"));
}

#[test]
fn solve_without_spline_writes_only_the_nodal_file() {
    let nodal = tmp_path("plain.csv");
    let dense = nodal.with_extension("dense.csv");
    let _ = std::fs::remove_file(&dense);
    let (code, _, _) = run(&[
        "solve",
        "--mesh",
        "shishkin",
        "--eps",
        "2^-5",
        "--N",
        "16",
        "--out",
        nodal.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(nodal.exists());
    assert!(!dense.exists());
}

#[test]
fn validation_failures_exit_2() {
    let (code, _, stderr) = run(&[
        "solve", "--mesh", "shishkin", "--eps", "2^-10", "--N", "127",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("multiple of 4"), "{stderr}");

    for args in [
        vec!["solve", "--mesh", "bakhvalov", "--eps", "0.25", "--N", "16"],
        vec!["solve", "--mesh", "nonsuch", "--eps", "2^-10", "--N", "16"],
        vec![
            "solve",
            "--problem",
            "builtin:nonsuch",
            "--mesh",
            "shishkin",
            "--eps",
            "2^-10",
            "--N",
            "16",
        ],
        vec!["solve", "--mesh", "shishkin", "--eps", "2^x", "--N", "16"],
        vec!["solve", "--mesh", "shishkin", "--eps", "0", "--N", "16"],
        vec![
            "solve", "--mesh", "shishkin", "--eps", "2^-10", "--N", "16", "--spline", "quintic",
        ],
        vec!["mesh", "--kind", "bakhvalov", "--eps", "0.25", "--N", "16"],
        vec![
            "mesh", "--kind", "liseikin", "--eps", "2^-10", "--N", "16", "--lis-c0", "-1",
        ],
        vec!["mesh", "--kind", "shishkin", "--eps", "2^-10", "--N", "6"],
        vec!["convergence", "--kmin", "1", "--kmax", "4"],
    ] {
        let (code, _, stderr) = run(&args);
        assert_eq!(code, 2, "{args:?} gave stderr: {stderr}");
    }
}

#[test]
fn non_convergence_exits_3() {
    let (code, _, stderr) = run(&[
        "solve", "--mesh", "shishkin", "--eps", "2^-10", "--N", "16", "--maxit", "1",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("did not converge"), "{stderr}");
}

#[test]
fn stability_violation_exits_4() {
    let (code, _, stderr) = run(&[
        "solve", "--mesh", "shishkin", "--eps", "2^-10", "--N", "16", "--gamma", "0.5",
    ]);
    assert_eq!(code, 4);
    assert!(stderr.contains("stability check failed"), "{stderr}");
}

#[test]
fn convergence_small_table_is_frozen() {
    let (code, stdout, _) = run(&[
        "convergence",
        "--kmin",
        "4",
        "--kmax",
        "5",
        "--eps-list",
        "2^-3",
        "--mesh",
        "shishkin",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "mesh,eps,N,E_N,Ord,iters\n\
         shishkin,2^-3,16,1.335e-2,2.95,2\n\
         shishkin,2^-3,32,3.332e-3,,2\n"
    );
}

#[test]
fn convergence_all_emits_blocks_in_order() {
    let (code, stdout, _) = run(&[
        "convergence",
        "--kmin",
        "4",
        "--kmax",
        "4",
        "--eps-list",
        "2^-10",
        "--mesh",
        "all",
    ]);
    assert_eq!(code, 0);
    let kinds: Vec<&str> = stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(kinds, ["shishkin", "shishkin-mod", "bakhvalov", "liseikin"]);
}

#[test]
fn convergence_markdown_format() {
    let (code, stdout, _) = run(&[
        "convergence",
        "--kmin",
        "4",
        "--kmax",
        "5",
        "--eps-list",
        "2^-10",
        "--mesh",
        "liseikin",
        "--format",
        "markdown",
    ]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "| mesh | eps | N | E_N | Ord | iters |"
    );
    assert!(lines.next().unwrap().starts_with("|---|"));
}

#[test]
fn convergence_with_capped_transition_point_succeeds() {
    let (code, stdout, _) = run(&[
        "convergence",
        "--kmin",
        "4",
        "--kmax",
        "4",
        "--eps-list",
        "0.25",
        "--mesh",
        "shishkin",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 2);
}

#[test]
fn convergence_with_no_successful_row_exits_3() {
    let (code, stdout, stderr) = run(&[
        "convergence",
        "--kmin",
        "4",
        "--kmax",
        "4",
        "--eps-list",
        "0.25",
        "--mesh",
        "bakhvalov",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("note: bakhvalov"), "{stderr}");
    // the table still lists the failed row with empty cells
    assert!(stdout.contains("bakhvalov,2^-2,16,,,"), "{stdout}");
}

#[test]
fn convergence_writes_table_to_file() {
    let path = tmp_path("table.csv");
    let (code, stdout, _) = run(&[
        "convergence",
        "--kmin",
        "4",
        "--kmax",
        "5",
        "--eps-list",
        "2^-10",
        "--mesh",
        "shishkin",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("mesh,eps,N,E_N,Ord,iters\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn mesh_dump_is_symmetric_with_diagnostics() {
    let (code, stdout, stderr) =
        run(&["mesh", "--kind", "shishkin", "--eps", "2^-10", "--N", "16"]);
    assert_eq!(code, 0);
    assert!(
        stderr.contains("lambda = 0.0054152123481245725"),
        "{stderr}"
    );
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "i,x_i,h_i");
    assert_eq!(lines.len(), 18); // header + 17 points
    let xs: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    for i in 0..=16 {
        assert_eq!(xs[i] + xs[16 - i], 1.0);
    }
    // h column closes the telescoping sum: last row leaves it empty
    assert!(lines[17].ends_with(','));
    let h0: f64 = lines[1].split(',').nth(2).unwrap().parse().unwrap();
    assert_eq!(h0, xs[1] - xs[0]);
}

#[test]
fn mesh_liseikin_prints_grading_constants() {
    let (code, _, stderr) = run(&["mesh", "--kind", "liseikin", "--eps", "2^-10", "--N", "16"]);
    assert_eq!(code, 0);
    assert!(stderr.contains("d = 3.60314973700795"), "{stderr}");
    assert!(stderr.contains("c1 = 0.549659537886742"), "{stderr}");
}

#[test]
fn mesh_bakhvalov_prints_alpha() {
    let (code, _, stderr) = run(&["mesh", "--kind", "bakhvalov", "--eps", "2^-10", "--N", "64"]);
    assert_eq!(code, 0);
    assert!(stderr.contains("alpha = 0.38587121056700"), "{stderr}");
}
