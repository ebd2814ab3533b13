use std::path::Path;
use std::process::{Command, Output};

use hyperdiff_cli::parse::{parse_expr, parse_operator};
use proptest::prelude::*;
use serde_json::Value;

const BESSEL: &str = "D^2 + (1/x)*D + (1 - t^2/x^2)";

fn hyperdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperdiff")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = hyperdiff(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

fn write_matrix(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn lommel_report_has_the_published_keys() {
    let (v, code) = json(&["criterion", "--op", BESSEL, "--rhs", "1", "--assume-irreducible", "--assume-quasi-simple"]);
    assert_eq!(code, 0);
    for key in ["verdict", "integrability", "inhomogeneous", "group", "assumptions", "caveats", "diagnostics", "version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["verdict"]["hypertranscendent"], true);
    assert_eq!(v["group"], "G_a^2 ⋊ SL2");
    assert_eq!(v["integrability"]["solvable"], false);
    assert_eq!(v["inhomogeneous"]["solvable"], false);
    assert_eq!(v["diagnostics"]["seed"], 0x5eed_cafe_u64);
}

#[test]
fn text_and_json_agree_on_verdict_booleans() {
    let args = ["criterion", "--op", "D^2", "--rhs", "x", "--assume-irreducible", "--assume-quasi-simple"];
    let (v, _) = json(&args);
    let text = String::from_utf8(hyperdiff(&args).stdout).unwrap();
    for key in ["verdict.hypertranscendent", "integrability.solvable", "inhomogeneous.solvable"] {
        let mut path = key.split('.');
        let expected = &v[path.next().unwrap()][path.next().unwrap()];
        assert!(text.contains(&format!("{key}: {expected}\n")), "{key} in\n{text}");
    }
}

#[test]
fn second_derivative_has_polynomial_solutions() {
    let (v, code) = json(&["ratsol", "--op", "D^2"]);
    assert_eq!(code, 0);
    let basis: Vec<&str> = v["result"]["basis"].as_array().unwrap().iter().map(|b| b[0].as_str().unwrap()).collect();
    assert_eq!(basis, ["1", "x"]);
}

#[test]
fn inhomogeneous_ratsol_reports_a_witness() {
    let (v, code) = json(&["ratsol", "--op", "x*D - 1", "--rhs", "x^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["inhomogeneous"]["solvable"], true);
    assert_eq!(v["inhomogeneous"]["witness"], "x^2");
}

#[test]
fn bessel_matrix_is_not_isomonodromic() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "bessel.json", r#"{"rows": 2, "cols": 2, "entries": [["0", "1"], ["t^2/x^2 - 1", "-1/x"]]}"#);
    let (v, code) = json(&["isomono", "--matrix", &m]);
    assert_eq!(code, 0);
    assert_eq!(v["integrability"]["solvable"], false);
    let (v, _) = json(&["isomono", "--op", BESSEL]);
    assert_eq!(v["integrability"]["solvable"], false);
}

#[test]
fn constructions_emit_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_matrix(dir.path(), "a.json", r#"{"rows": 1, "cols": 1, "entries": [["t/x"]]}"#);
    let b = write_matrix(dir.path(), "b.json", r#"{"rows": 1, "cols": 1, "entries": [["1"]]}"#);
    let (v, code) = json(&["construct", "dsum", "--matrix", &a, "--matrix", &b]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["system"]["rows"], 2);
    let (v, _) = json(&["construct", "prolong", "--matrix", &a]);
    assert_eq!(v["result"]["system"]["entries"][0][1], "1/x");
    let (v, _) = json(&["construct", "reduce", "--matrix", &a, "--matrix", &b, "--matrix", &b]);
    assert_eq!(v["result"]["system"]["rows"], 2);
    let (v, code) = json(&["construct", "tensor", "--matrix", &a]);
    assert_eq!(code, 1);
    assert!(v["diagnostics"]["errors"][0].as_str().unwrap().contains("takes 2 matrices"));
}

#[test]
fn decompose_notes_the_refusal_for_constant_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_matrix(dir.path(), "a.json", r#"{"rows": 1, "cols": 1, "entries": [["1/x"]]}"#);
    let b = write_matrix(dir.path(), "b.json", r#"{"rows": 1, "cols": 1, "entries": [["t/x"]]}"#);
    let (v, code) = json(&["decompose", "--matrix", &a, "--matrix", &b]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["constant"], serde_json::json!([0]));
    assert_eq!(v["result"]["non_constant"], serde_json::json!([1]));
    assert_eq!(v["result"]["witnesses"]["0"]["entries"][0][0], "0");
    assert!(v["diagnostics"]["notes"][0].as_str().unwrap().contains("not computed"));
}

#[test]
fn exit_codes_separate_usage_from_completion() {
    let out = hyperdiff(&["ratsol", "--op", "x^-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 3"));
    assert_eq!(hyperdiff(&["criterion", "--op", BESSEL, "--rhs", "1"]).status.code(), Some(1));
    assert_eq!(hyperdiff(&["ratsol", "--op", "0"]).status.code(), Some(1));
    assert_eq!(hyperdiff(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hyperdiff(&["--help"]).status.code(), Some(0));
    assert_eq!(hyperdiff(&["isomono", "--matrix", "/nonexistent.json"]).status.code(), Some(1));
}

#[test]
fn tight_degree_cap_is_inconclusive() {
    let (v, code) = json(&["ratsol", "--op", "x*D - 5", "--max-degree", "2"]);
    assert_eq!(code, 2);
    assert!(v["diagnostics"]["errors"][0].as_str().unwrap().contains("exceeds the configured cap"));
}

fn small_expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("x".to_string()), Just("t".to_string()), (0u32..20).prop_map(|n| n.to_string())];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) * ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) / ({b})")),
            (inner, 0u32..4).prop_map(|(a, e)| format!("({a})^{e}")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_expressions_parse_back(src in small_expr()) {
        if let Ok(f) = parse_expr(&src) {
            prop_assert_eq!(parse_expr(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn printed_operators_parse_back(a in small_expr(), b in small_expr(), c in small_expr()) {
        let src = format!("({a})*D^2 + ({b})*D + ({c})");
        if let Ok(l) = parse_operator(&src) {
            prop_assert_eq!(parse_operator(&l.to_string()).unwrap(), l);
        }
    }
}
