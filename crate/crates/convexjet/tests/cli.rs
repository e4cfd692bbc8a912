//! End-to-end tests of the command-line interface: exit codes, JSON output,
//! file round trips, and the built-in demos.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_convexjet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

const PARABOLA_JSON: &str =
    r#"{"dim": 1, "points": [[0.0], [1.0], [2.0]], "values": [0.0, 0.5, 2.0]}"#;
const ABS5_CSV: &str = "x,f\n-2,2\n-1,1\n0,0\n1,1\n2,2\n";

#[test]
fn check_feasible_data_exits_zero_with_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "p.json", PARABOLA_JSON);
    let out = run(&["check", data.to_str().unwrap(), "--M", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["slopes"], serde_json::json!([0.0, 1.0, 2.0]));
}

#[test]
fn check_infeasible_data_exits_two_and_locates_the_violation() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "abs5.csv", ABS5_CSV);
    let out = run(&["check", data.to_str().unwrap(), "--M", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["feasible"], false);
    assert_eq!(v["infeasibility"]["kind"], "SymgViolation");
    assert_eq!(v["infeasibility"]["index"], 3);
    assert_eq!(v["infeasibility"]["gap"], 2.0);
}

#[test]
fn check_without_bound_on_1d_data_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "p.json", PARABOLA_JSON);
    let out = run(&["check", data.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--M"));
}

#[test]
fn empty_dataset_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(
        dir.path(),
        "empty.json",
        r#"{"dim": 1, "points": [], "values": []}"#,
    );
    let out = run(&["check", data.to_str().unwrap(), "--M", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_subcommand_and_help_exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["eval", "--help"]).status.code(), Some(0));
}

#[test]
fn interp_eval_round_trip_reproduces_the_samples() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "p.json", PARABOLA_JSON);
    let ext = dir.path().join("ext.json");
    let out = run(&[
        "interp1d",
        data.to_str().unwrap(),
        "--M",
        "1",
        "-o",
        ext.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["feasible"], true);
    assert!(v["lip_grad"].as_f64().unwrap() <= 2.0 + 1e-9);

    for (x, f) in [(0.0, 0.0), (1.0, 0.5), (2.0, 2.0)] {
        let out = run(&["eval", ext.to_str().unwrap(), "--at", &x.to_string()]);
        assert_eq!(out.status.code(), Some(0));
        let line = String::from_utf8(out.stdout).unwrap();
        let cols: Vec<f64> = line
            .trim()
            .split('\t')
            .map(|c| c.parse().unwrap())
            .collect();
        assert_eq!(cols.len(), 3);
        assert!(
            (cols[1] - f).abs() <= 1e-9,
            "F({x}) = {} should be {f}",
            cols[1]
        );
    }
}

#[test]
fn strongly_convex_interp_round_trip_reproduces_the_samples() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "p.json", PARABOLA_JSON);
    let ext = dir.path().join("ext.json");
    let out = run(&[
        "interp1d",
        data.to_str().unwrap(),
        "--M",
        "1",
        "--eta",
        "0.5",
        "-o",
        ext.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["strongly_convex_on_hull"], true);
    assert!(v["lip_grad"].as_f64().unwrap() <= 2.0 * 1.0 + 3.0 * 0.5 + 1e-9);

    let out = run(&["eval", ext.to_str().unwrap(), "--grid", "0", "2", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split('\t').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    for (row, f) in rows.iter().zip([0.0, 0.5, 2.0]) {
        assert!((row[1] - f).abs() <= 1e-9);
    }
}

#[test]
fn extension_files_reload_losslessly() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "p.json", PARABOLA_JSON);
    let ext = dir.path().join("ext.json");
    // The eta > 0 route produces knots with no short decimal form, which is
    // exactly where lossy float parsing would corrupt the profile.
    let out = run(&[
        "interp1d",
        data.to_str().unwrap(),
        "--M",
        "1",
        "--eta",
        "0.5",
        "-o",
        ext.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read(&ext).unwrap();
    let (profile, eta) = convexjet::cli::load_extension(&ext).unwrap();
    let ext2 = dir.path().join("ext2.json");
    convexjet::cli::save_extension(&ext2, &profile, eta).unwrap();
    assert_eq!(first, std::fs::read(&ext2).unwrap());
}

#[test]
fn infeasible_interp_exits_two_without_writing_output() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "abs5.csv", ABS5_CSV);
    let ext = dir.path().join("ext.json");
    let out = run(&[
        "interp1d",
        data.to_str().unwrap(),
        "--M",
        "10",
        "-o",
        ext.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["infeasibility"]["kind"], "SymgViolation");
    assert!(!ext.exists());
}

#[test]
fn eval_requires_exactly_one_location_flag() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "p.json", PARABOLA_JSON);
    let ext = dir.path().join("ext.json");
    run(&[
        "interp1d",
        data.to_str().unwrap(),
        "--M",
        "1",
        "-o",
        ext.to_str().unwrap(),
    ]);
    assert_eq!(
        run(&["eval", ext.to_str().unwrap()]).status.code(),
        Some(1)
    );
    let both = run(&[
        "eval",
        ext.to_str().unwrap(),
        "--at",
        "1",
        "--grid",
        "0",
        "1",
        "2",
    ]);
    assert_eq!(both.status.code(), Some(1));
}

#[test]
fn minimal_m_reports_infinite_bound_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "abs5.csv", ABS5_CSV);
    let out = run(&["minimal-m", data.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["finite"], false);
    assert_eq!(v["minimal_m"], serde_json::Value::Null);

    let data = write(dir.path(), "p.json", PARABOLA_JSON);
    let out = run(&["minimal-m", data.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["finite"], true);
    let m = v["minimal_m"].as_f64().unwrap();
    assert!((m - 1.0).abs() <= 1e-3, "minimal m was {m}");
}

#[test]
fn scan_finds_the_five_point_obstruction() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "abs5.csv", ABS5_CSV);
    let out4 = run(&[
        "scan",
        data.to_str().unwrap(),
        "--M",
        "1000000",
        "--kmax",
        "4",
    ]);
    assert_eq!(out4.status.code(), Some(0));
    assert_eq!(stdout_json(&out4)["all_feasible"], true);

    let out5 = run(&[
        "scan",
        data.to_str().unwrap(),
        "--M",
        "1000000",
        "--kmax",
        "5",
    ]);
    assert_eq!(out5.status.code(), Some(2));
    let v = stdout_json(&out5);
    assert_eq!(v["all_feasible"], false);
    // The only failing subset is the full five-point set.
    let bad: Vec<&serde_json::Value> = v["subsets"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["feasible"] == false)
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["indices"], serde_json::json!([0, 1, 2, 3, 4]));
}

#[test]
fn check_square_corners_in_2d_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(
        dir.path(),
        "sq.json",
        r#"{"dim": 2, "points": [[0,0],[1,0],[0,1],[1,1]], "values": [0.0, 0.5, 0.5, 1.0]}"#,
    );
    let out = run(&["check", data.to_str().unwrap(), "--eta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["feasible"], true);
    let l = v["selection"]["l"].as_f64().unwrap();
    assert!((0.9..=1.01).contains(&l), "selection level was {l}");
}

#[test]
fn env_tolerance_is_used_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "p.json", PARABOLA_JSON);
    let out = bin()
        .args(["check", data.to_str().unwrap(), "--M", "1"])
        .env("CONVEXJET_TOL", "1e-3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["tol"], 1e-3);

    let out = bin()
        .args(["check", data.to_str().unwrap(), "--M", "1"])
        .env("CONVEXJET_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CONVEXJET_TOL"));

    // An explicit flag wins over the environment.
    let out = bin()
        .args(["check", data.to_str().unwrap(), "--M", "1", "--tol", "1e-7"])
        .env("CONVEXJET_TOL", "1e-3")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["tol"], 1e-7);
}

#[test]
fn plot_data_emits_csv_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "p.json", PARABOLA_JSON);
    let ext = dir.path().join("ext.json");
    run(&[
        "interp1d",
        data.to_str().unwrap(),
        "--M",
        "1",
        "-o",
        ext.to_str().unwrap(),
    ]);
    let csv_path = dir.path().join("plot.csv");
    let out = run(&[
        "plot-data",
        ext.to_str().unwrap(),
        "--grid",
        "0",
        "2",
        "5",
        "-o",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,F,dF");
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[1], "0,0,0");

    // Zero-point grid: header only.
    let out = run(&[
        "plot-data",
        ext.to_str().unwrap(),
        "--grid",
        "0",
        "2",
        "0",
        "-o",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&csv_path).unwrap().trim(), "x,F,dF");
}

#[test]
fn demo_sharpness5_prints_the_scan_verdict() {
    let out = run(&["demo", "sharpness5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("kmax=4 feasible / kmax=5 infeasible"),
        "missing verdict line in:\n{text}"
    );
    assert!(text.contains("sample 3"));
}

#[test]
fn demo_scexample_prints_residuals_and_pair_verdicts() {
    let out = run(&["demo", "scexample"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(0.13, 0.03)"), "missing residuals in:\n{text}");
    assert!(text.contains("sc_pair_feasible(eta = 0.1, Mcap = 1) = false"));
    assert!(text.contains("sc_pair_feasible(eta = 0.05, Mcap = 3) = true"));
    // The inequality lines carry self-describing labels with slack values.
    assert!(text.contains("f(1) - P_0(1) >= eta/2"));
}

#[test]
fn demo_parabola_reports_the_halved_square() {
    let out = run(&["demo", "parabola"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[0.0, 1.0, 2.0]"));
    assert!(text.contains("F(1.5) = 1.125"));
}

#[test]
fn malformed_csv_points_to_the_bad_cell() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "bad.csv", "x,f\n0,0\noops,1\n");
    let out = run(&["check", data.to_str().unwrap(), "--M", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr was {err}");
}
