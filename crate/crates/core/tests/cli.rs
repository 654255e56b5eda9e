use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const ANNULUS: &str = r#"{"outer": {"center": [0, 0], "radius": 2}, "holes": [{"center": [0, 0], "radius": 0.5}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semigalois"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn problem(domain: &str, degree: usize, coefficients: &str) -> String {
    format!(r#"{{"domain": {}, "polynomial": {{"degree": {}, "coefficients": {}}}}}"#, domain, degree, coefficients)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_cube_root() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", &problem(ANNULUS, 3, r#"[[0, -1], [], []]"#));
    let r = json(&run(&["analyze", p.to_str().unwrap()]));
    assert_eq!(r["degree"], 3);
    assert_eq!(r["group"]["order"], 3);
    assert_eq!(r["transitive"], true);
    assert_eq!(r["splitting_degree"], 3);
}

#[test]
fn analyze_reducible() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", &problem(ANNULUS, 4, r#"[[0, 0, 2], [], [0, -3], []]"#));
    let r = json(&run(&["analyze", p.to_str().unwrap(), "--correspond", "--delta"]));
    assert_eq!(r["group"]["order"], 2);
    assert_eq!(r["irreducible"], false);
    assert_eq!(r["factor_degrees"], serde_json::json!([2, 2]));
    assert!(r["correspondence"]["rows"].as_array().unwrap().len() >= 2);
    assert_eq!(r["delta"]["degree"], 4);
}

#[test]
fn pretty_output_and_stdin() {
    let mut child = bin().args(["--pretty", "analyze", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(problem(ANNULUS, 2, r#"[[0, -1], []]"#).as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order 2"), "{}", text);
    assert!(text.contains("irreducible: yes"));
}

#[test]
fn malformed_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{\"domain\": ");
    let out = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let p = write(dir.path(), "deg.json", &problem(ANNULUS, 3, r#"[[0, -1], []]"#));
    assert_eq!(run(&["analyze", p.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "/nonexistent/f.json"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn branch_point_in_domain_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let disc = r#"{"outer": {"center": [0, 0], "radius": 1}}"#;
    let p = write(dir.path(), "f.json", &problem(disc, 2, r#"[[0, -1], []]"#));
    let out = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn factor_splits_orbits() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", &problem(ANNULUS, 4, r#"[[0, 0, 2], [], [0, -3], []]"#));
    let r = json(&run(&["factor", p.to_str().unwrap()]));
    let factors = r["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 2);
    for f in factors {
        assert_eq!(f["polynomial"]["degree"], 2);
    }
}

#[test]
fn correspond_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", &problem(ANNULUS, 4, r#"[[0, -1], [], [], []]"#));
    let r = json(&run(&["correspond", p.to_str().unwrap()]));
    let rows = r["table"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(r["table"]["anti_monotone"], true);
    assert_eq!(r["table"]["index_identities"], true);
}

#[test]
fn realize_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    for (args, order) in [(vec!["--cyclic", "5"], 5), (vec!["--abelian", "2,2"], 4), (vec!["--symmetric", "3"], 6)] {
        let mut full = vec!["realize"];
        full.extend(args.iter().copied());
        let out = run(&full);
        let spec = json(&out);
        assert_eq!(spec["certificate"]["certificate"]["order"], order);
        let p = dir.path().join("r.json");
        std::fs::write(&p, &out.stdout).unwrap();
        let r = json(&run(&["analyze", p.to_str().unwrap()]));
        assert_eq!(r["group"]["order"], order, "{:?}", args);
    }
}

#[test]
fn realize_is_deterministic() {
    let a = run(&["realize", "--gens", "(1 2);(1 2 3)", "--seed", "7"]);
    let b = run(&["realize", "--gens", "(1 2);(1 2 3)", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["certificate"]["certificate"]["order"], 6);
}

#[test]
fn search_budget_exhausted_exits_5() {
    let out = run(&["realize", "--gens", "(1 2 3 4 5 6 7 8)", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(5), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn rationalize_float_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "f.json", &problem(ANNULUS, 2, r#"[[[0.0, 0.0], [-0.75, 0.0]], [[0.125, 0.0]]]"#));
    let out = run(&["rationalize", p.to_str().unwrap()]);
    let spec = json(&out);
    assert_eq!(spec["polynomial"]["coefficients"][0][1], "-3/4");
    assert_eq!(spec["polynomial"]["coefficients"][1][0], "1/8");
    assert!(spec["homotopy"].is_object());
    let q = dir.path().join("q.json");
    std::fs::write(&q, &out.stdout).unwrap();
    assert_eq!(json(&run(&["analyze", q.to_str().unwrap()]))["group"]["order"], 2);
}
