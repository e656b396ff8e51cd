//! The `l2lab` binary: exit codes, output formats and the report schema.

mod common;

use std::collections::BTreeSet;
use std::io::Write;

use common::{l2lab, order_from_covers, repo_path};
use l2lab_core::lattice::build_lattice;
use l2lab_core::numfield::make_field;
use l2lab_core::parse::parse_polynomial;
use l2lab_core::principal::compute_principal_subfields;
use serde_json::Value;

const POLYNOMIALS: [&str; 5] = ["X^4 - 2", "X^4 - 10*X^2 + 1", "X^6 + 108", "X^3 - 3*X + 1", "X^8 - 2"];

fn algebra_files() -> Vec<String> {
    let dir = repo_path("algebras");
    let mut files: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path().display().to_string())
        .filter(|p| p.ends_with(".json"))
        .collect();
    files.sort();
    assert!(files.len() >= 8, "expected the shipped algebra examples in {dir}");
    files
}

fn stdout(args: &[&str]) -> String {
    let out = l2lab(args, None);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], cap: Option<&str>) -> i32 {
    l2lab(args, cap).status.code().unwrap()
}

fn temp_doc(doc: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(doc.as_bytes()).unwrap();
    f
}

fn schema() -> Value {
    let text = std::fs::read_to_string(format!("{}/schema/report.schema.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// DOT edges `nI -> nJ` as index pairs.
fn dot_edges(dot: &str) -> Vec<[usize; 2]> {
    dot.lines()
        .filter_map(|l| {
            let (a, b) = l.trim().trim_end_matches(';').split_once(" -> ")?;
            Some([a.trim_start_matches('n').parse().unwrap(), b.trim_start_matches('n').parse().unwrap()])
        })
        .collect()
}

#[test]
fn every_shipped_example_exits_zero() {
    for p in POLYNOMIALS {
        for sub in ["classify", "length", "minimal", "lattice"] {
            stdout(&[sub, p]);
        }
        stdout(&["subfields", p]);
    }
    for f in algebra_files() {
        for sub in ["classify", "length", "minimal", "lattice"] {
            stdout(&[sub, "--algebra", &f]);
        }
        stdout(&["lattice", "--algebra", &f, "--format", "dot"]);
    }
}

#[test]
fn classify_pure_quartic_text() {
    let out = stdout(&["classify", "X^4 - 2"]);
    assert!(out.contains("principal subfields (t = 2):"), "{out}");
    assert!(out.contains("intermediate count: 3 (predicted 3)"));
    assert!(out.contains("length: 2\n"));
    assert!(out.contains("case: (8d)\n"));
    assert!(out.ends_with("status: OK\n"));
}

#[test]
fn classify_three_copies_is_case_seven() {
    let f = repo_path("algebras/three-copies.json");
    let out = stdout(&["classify", "--algebra", &f]);
    assert!(out.contains("case: (7)\n"), "{out}");
    assert!(out.contains("intermediate count: 5 (predicted 5)"));
}

#[test]
fn subfields_lists_principal_subfields() {
    let out = stdout(&["subfields", "X^4 - 10*X^2 + 1"]);
    assert!(out.contains("t = 3\n"), "{out}");
    assert_eq!(out.matches("[degree 2]").count(), 3);
}

#[test]
fn dot_closure_equals_subfield_order() {
    for p in POLYNOMIALS {
        let dot = stdout(&["lattice", p, "--format", "dot"]);
        assert!(dot.starts_with("digraph lattice {") && dot.trim_end().ends_with('}'));
        let field = make_field(&parse_polynomial(p).unwrap()).unwrap();
        let lat = build_lattice(&compute_principal_subfields(&field).unwrap()).unwrap();
        let n = lat.nodes.len();
        assert_eq!(dot.matches("[label=").count(), n);
        let mut le = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if lat.nodes[i].is_subfield_of(&lat.nodes[j]) {
                    le.insert((i, j));
                }
            }
        }
        assert_eq!(order_from_covers(n, &dot_edges(&dot)), le, "{p}");
    }
}

#[test]
fn biquadratic_dot_is_a_diamond() {
    let dot = stdout(&["lattice", "X^4 - 10*X^2 + 1", "--format", "dot"]);
    assert_eq!(dot_edges(&dot), vec![[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]]);
}

#[test]
fn json_reports_validate_against_schema() {
    let schema = schema();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let mut runs: Vec<Vec<String>> = POLYNOMIALS.iter().map(|p| vec![p.to_string()]).collect();
    runs.extend(algebra_files().into_iter().map(|f| vec!["--algebra".to_string(), f]));
    let required: BTreeSet<String> =
        schema["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    for run in runs {
        let mut args = vec!["classify"];
        args.extend(run.iter().map(String::as_str));
        args.extend(["--format", "json"]);
        let report: Value = serde_json::from_str(&stdout(&args)).unwrap();
        let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{run:?}: {errors:?}");
        let keys: BTreeSet<String> = report.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, required, "top-level fields drifted from the schema");
        assert_eq!(report["status"], "OK");
    }
}

#[test]
fn schema_rejects_unknown_fields_and_cases() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let mut report: Value = serde_json::from_str(&stdout(&["classify", "X^4 - 2", "--format", "json"])).unwrap();
    assert!(validator.is_valid(&report));
    report["case"] = Value::from("(9)");
    assert!(!validator.is_valid(&report));
    report["case"] = Value::from("(8d)");
    report["extra"] = Value::from(1);
    assert!(!validator.is_valid(&report));
}

#[test]
fn parse_errors_exit_one() {
    assert_eq!(code(&["classify", "X^4 -"], None), 1);
    assert_eq!(code(&["classify", "X^2 - 1.5"], None), 1);
    assert_eq!(code(&["classify", "X^2 - 1"], None), 1);
    assert_eq!(code(&["classify", "--algebra", "/nonexistent/algebra.json"], None), 1);
    assert_eq!(code(&["frobnicate"], None), 1);
    let out = l2lab(&["classify", "X^^2"], None);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
}

#[test]
fn bad_algebras_exit_one() {
    let docs = [
        r#"{"q": 2, "quotient": "F2[X]/(X + 1, X)", "R": "[1]"}"#,
        r#"{"q": 2, "table": {"dim": 2, "unit": [1, 0], "mult": [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]}, "R": {"basis": ["b1"]}}"#,
        r#"{"q": 2, "quotient": "F2[X,Y]/(X^2, X*Y, Y^2)", "R": {"basis": ["1", "X", "X + Y"]}}"#,
        r#"{"q": 2, "quotient": "F2[X,Y]/(X^2)", "R": "[1]"}"#,
        r#"{"q": 6, "product": ["F6"], "R": "[1]"}"#,
        r#"{"q": 2, "product": ["F2"], "R": "[1]", "extra": 1}"#,
    ];
    for doc in docs {
        let f = temp_doc(doc);
        let out = l2lab(&["classify", "--algebra", f.path().to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(1), "{doc}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let f = temp_doc(r#"{"q": 2, "product": ["F2", "F2"], "R": "[e1]"}"#);
    let out = l2lab(&["classify", "--algebra", f.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("R equals S"));
}

#[test]
fn cap_exceeded_exits_two() {
    let f = repo_path("algebras/three-copies.json");
    assert_eq!(code(&["classify", "--algebra", &f], Some("3")), 2);
    assert_eq!(code(&["classify", "--algebra", &f], Some("1000")), 0);
    let big = temp_doc(r#"{"q": 2, "quotient": "F2[X]/(X^30)", "R": "[1]"}"#);
    let out = l2lab(&["length", "--algebra", big.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn help_and_version_exit_zero() {
    assert!(stdout(&["--help"]).contains("classify"));
    assert!(stdout(&["--version"]).starts_with("l2lab "));
}
