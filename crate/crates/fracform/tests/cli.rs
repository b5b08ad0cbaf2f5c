use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fracform::format::{parse_form, parse_triple};
use tempfile::TempDir;

fn fracform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracform")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gasket3_inputs(dir: &TempDir) -> (PathBuf, PathBuf, PathBuf) {
    let (t, e, r) = (path(dir, "T.json"), path(dir, "E.json"), path(dir, "r.json"));
    assert_eq!(code(&fracform(&["triple", "build", "--kind", "gasket", "--n", "3", "-o", s(&t)])), 0);
    assert_eq!(code(&fracform(&["form", "unit", "--n", "3", "-o", s(&e)])), 0);
    fs::write(&r, r#"{"r": [1.0, 1.0, 1.0]}"#).unwrap();
    (t, e, r)
}

#[test]
fn build_then_validate() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "T.json");
    let out = fracform(&["triple", "build", "--kind", "counterexample", "-o", s(&t)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = fracform(&["triple", "validate", s(&t)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(parse_triple(&fs::read_to_string(&t).unwrap()).unwrap().n_level1, 380);
}

#[test]
fn invalid_triple_lists_every_violation() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "bad.json");
    // cell 2 fixes the wrong boundary vertex and vertex 4 is never used
    fs::write(&t, r#"{"n_boundary": 2, "n_cells": 2, "n_level1": 4, "cells": [[1, 3], [3, 1]]}"#).unwrap();
    let out = fracform(&["triple", "validate", s(&t)]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("axiom a"), "{err}");
    assert!(err.contains("vertex 4 lies in no cell"), "{err}");
}

#[test]
fn malformed_json_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "T.json");
    fs::write(&t, "{ not json").unwrap();
    assert_eq!(code(&fracform(&["triple", "validate", s(&t)])), 2);
}

#[test]
fn renorm_gasket3_unit_gives_point_six() {
    let dir = TempDir::new().unwrap();
    let (t, e, r) = gasket3_inputs(&dir);
    let o = path(&dir, "out.json");
    let out = fracform(&["renorm", "--triple", s(&t), "--form", s(&e), "--weights", s(&r), "-o", s(&o)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let f = parse_form(&fs::read_to_string(&o).unwrap()).unwrap();
    for c in f.coefficients() {
        assert!((c - 0.6).abs() <= 1e-9);
    }
}

#[test]
fn missing_weights_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let (t, e, _) = gasket3_inputs(&dir);
    let out = fracform(&["renorm", "--triple", s(&t), "--form", s(&e)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("Usage"), "{}", stderr(&out));
}

#[test]
fn reducible_form_is_rejected() {
    let dir = TempDir::new().unwrap();
    let (t, _, r) = gasket3_inputs(&dir);
    let e = path(&dir, "zero.json");
    fs::write(
        &e,
        r#"{"n_boundary": 3, "coefficients": [{"pair": [1, 2], "c": 1.0}, {"pair": [1, 3], "c": 0.0}, {"pair": [2, 3], "c": 0.0}]}"#,
    )
    .unwrap();
    let out = fracform(&["renorm", "--triple", s(&t), "--form", s(&e), "--weights", s(&r)]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
}

#[test]
fn conductivity_of_unit_triangle() {
    let dir = TempDir::new().unwrap();
    let (_, e, _) = gasket3_inputs(&dir);
    let out = fracform(&["form", "conductivity", "--form", s(&e), "--pair", "1,3"]);
    assert_eq!(code(&out), 0);
    let c: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!((c - 1.5).abs() < 1e-15);
    assert_eq!(code(&fracform(&["form", "conductivity", "--form", s(&e), "--pair", "1,4"])), 1);
}

#[test]
fn iterate_writes_trace() {
    let dir = TempDir::new().unwrap();
    let (t, e, _) = gasket3_inputs(&dir);
    let r = path(&dir, "r53.json");
    fs::write(&r, r#"{"r": [1.6666666666666667, 1.6666666666666667, 1.6666666666666667]}"#).unwrap();
    let csv = path(&dir, "trace.csv");
    let out = fracform(&[
        "iterate",
        "--triple",
        s(&t),
        "--form",
        s(&e),
        "--weights",
        s(&r),
        "--max-steps",
        "200",
        "--tol",
        "1e-10",
        "--trace",
        s(&csv),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("converged after 1 steps"));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("step,residual,M,m,phi,coeff_sum"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn search_and_certify_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "T.json");
    fracform(&["triple", "build", "--kind", "gasket", "--n", "3", "-o", s(&t)]);
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    for o in [&a, &b] {
        assert_eq!(code(&fracform(&["search", "--triple", s(&t), "--grid", "3", "-o", s(o)])), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    for o in [&a, &b] {
        let out = fracform(&["certify", "--samples", "8", "--seed", "42", "--random-weights", "-o", s(o)]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let text = fs::read_to_string(&a).unwrap();
    assert!(text.contains("\"samples_with_violations\": 0"));
}

#[test]
fn certify_zero_samples_succeeds() {
    let out = fracform(&["certify", "--samples", "0"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn certify_rejects_wrong_weight_count() {
    let dir = TempDir::new().unwrap();
    let r = path(&dir, "r.json");
    fs::write(&r, r#"{"r": [1.0, 1.0, 1.0]}"#).unwrap();
    assert_eq!(code(&fracform(&["certify", "--samples", "1", "--weights", s(&r)])), 2);
}

#[test]
fn version_help_and_explain() {
    let out = fracform(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("fracform "));
    assert_eq!(code(&fracform(&["--help"])), 0);
    let out = fracform(&["explain", "far"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("M(E)"));
    assert_eq!(code(&fracform(&["explain", "nonsense"])), 1);
    assert_eq!(code(&fracform(&["no-such-command"])), 1);
}
