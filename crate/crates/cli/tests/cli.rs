use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

use braidqm::reeb::Grid;
use serde_json::Value;

fn braidqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidqm"))
        .args(args)
        .env_remove("BRAIDQM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = braidqm(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn invariant_of_the_trefoil() {
    let v = stdout_json(&["invariant", "--braid", "1 1 1", "--n", "2", "--theta", "1/2"]);
    assert_eq!(v["kappa"], -1);
    assert_eq!(v["signature"], 2);
    assert_eq!(v["omega_signature"], 2);
    assert_eq!(v["determinant"], "3");
    assert_eq!(v["s"], 2);
    assert_eq!(v["tau"], "1");
}

#[test]
fn invariant_of_a_non_positive_knot_has_bounds_only() {
    let v = stdout_json(&["invariant", "--braid", "1 -2 1 -2"]);
    assert_eq!(v["strands"], 3);
    assert_eq!(v["signature"], 0);
    assert_eq!(v["determinant"], "5");
    assert!(v["s"].is_null());
    assert_eq!(v["s_bounds"], serde_json::json!([-2, 2]));
}

#[test]
fn eta_table_spot_value() {
    let out = braidqm(&["eta-table", "--i", "3", "--theta", "1/2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[..3], ["3", "1/2", "2"]);
    let v = stdout_json(&["eta-table", "--i", "2", "--theta", "1/2"]);
    assert_eq!(v["rows"][0]["eta"], "2");
}

#[test]
fn basis_is_lower_triangular() {
    let out = braidqm(&["basis", "--n", "4", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2,0,0\n2,-4,0\n4,0,-4\n");
}

#[test]
fn gg_integrate_battery() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("single_edge.json");
    let a = 1.3;
    fs::write(
        &path,
        format!(r#"{{"edges":[{{"lo":0,"hi":0.5,"poly":[{},{}]}}],"parent":[1],"root":1}}"#, a / 2.0, -a),
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let v = stdout_json(&["gg-integrate", "--tree", p, "--n", "2", "--phi", "sign"]);
    let want = -2.0 * PI * PI * a;
    assert!((v["gg_integral"].as_f64().unwrap() - want).abs() < 1e-12);
    assert!((v["sign_gg_closed"].as_f64().unwrap() - want).abs() < 1e-12);
    assert!((v["calabi"].as_f64().unwrap() + PI * a / 2.0).abs() < 1e-12);

    let out = braidqm(&["asymptotics", "--tree", p, "--n-max", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,ratio,calabi,bound\n2,"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn reeb_extract_from_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bump.grid");
    let g = Grid::sample(61, |x, y| (0.25 - x * x - y * y).max(0.0));
    fs::write(&path, g.to_text()).unwrap();
    let v = stdout_json(&["reeb-extract", "--grid", path.to_str().unwrap()]);
    assert_eq!(v["edges"].as_array().unwrap().len(), 1);
    assert_eq!(v["parent"], serde_json::json!([1]));
}

#[test]
fn identical_runs_are_byte_identical() {
    let sim = [
        "simulate", "--battery", "3", "--n", "3", "--samples", "40", "--p", "2", "--dt", "0.005", "--seed", "9",
    ];
    let a = braidqm(&sim);
    let b = braidqm(&sim);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["N"], 40);
    assert_eq!(v["seed"], 9);
    assert!(v["sign_convention"].as_str().unwrap().contains("-dH/dy"));

    let def = ["defect", "--phi", "sign", "--n-max", "3", "--pairs", "30", "--len", "6"];
    assert_eq!(braidqm(&def).stdout, braidqm(&def).stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let args = ["defect", "--phi", "lk", "--n-max", "4", "--pairs", "20"];
    let env = Command::new(env!("CARGO_BIN_EXE_braidqm"))
        .args(args)
        .env("BRAIDQM_SEED", "77")
        .output()
        .unwrap();
    let mut explicit = args.to_vec();
    explicit.extend(["--seed", "77"]);
    assert_eq!(env.stdout, braidqm(&explicit).stdout);
    let v: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(v["seed"], 77);
    assert_eq!(v["max_defect"], 0.0);
}

#[test]
fn homogenize_reports_bracket() {
    let v = stdout_json(&["homogenize", "--braid", "1 -2", "--phi", "sign", "--p", "40"]);
    assert!(v["value"].as_f64().unwrap().abs() <= v["bracket"].as_f64().unwrap());
    assert_eq!(v["heuristic"], false);
}

#[test]
fn errors_are_single_line_json() {
    for args in [
        vec!["invariant", "--braid", "1 x"],
        vec!["eta-table", "--i", "3", "--theta", "3/2"],
        vec!["gg-integrate", "--tree", "/nonexistent/tree.json", "--n", "2"],
        vec!["no-such-command"],
    ] {
        let out = braidqm(&args);
        assert!(!out.status.success());
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        let v: Value = serde_json::from_str(&err).unwrap();
        assert!(v["error"].is_string() && v["message"].is_string());
    }
}
