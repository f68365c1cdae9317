use dppforge::catalog;
use serde_json::{json, Value};
use std::process::Command;

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/../../schema/{name}", env!("CARGO_MANIFEST_DIR"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn errors(v: &jsonschema::Validator, doc: &Value) -> Vec<String> {
    v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect()
}

#[test]
fn catalog_documents_match_the_schema() {
    let v = schema("algebra.schema.json");
    for entry in catalog::entries() {
        let doc = serde_json::to_value(&entry.document).unwrap();
        assert!(errors(&v, &doc).is_empty(), "{}: {:?}", entry.name, errors(&v, &doc));
    }
}

#[test]
fn malformed_documents_are_rejected() {
    let v = schema("algebra.schema.json");
    let mut doc = serde_json::to_value(&catalog::entry("A2").unwrap().document).unwrap();
    assert!(v.is_valid(&doc));
    doc["kind"] = json!("group");
    assert!(!v.is_valid(&doc));
    doc["kind"] = json!("dpp");
    doc["products"]["circ"][0]["result"]["e1"] = json!("1/0.5");
    assert!(!v.is_valid(&doc));
}

#[test]
fn cli_reports_match_the_schema() {
    let v = schema("report.schema.json");
    let dir = tempfile::tempdir().unwrap();
    let forge = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().unwrap();
    let path = dir.path().join("d.json");
    let path = path.to_str().unwrap();
    assert!(forge(&["catalog", "export", "DOUBLE_A2", "-o", path]).status.success());
    let runs: Vec<Vec<&str>> = vec![
        vec!["--format", "json", "check", "bialgebra", path],
        vec!["--format", "json", "ybe", "classify", path],
        vec!["--format", "json", "ybe", "residual", path],
        vec!["--format", "json", "check", "rb", path, "--operator", "rb"],
        vec!["--format", "json", "catalog", "show", "PB6"],
        vec!["--format", "json", "graded", "nu", "--label", "0,1,2"],
    ];
    for args in runs {
        let out = forge(&args);
        let report: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(errors(&v, &report).is_empty(), "{args:?}: {:?}", errors(&v, &report));
    }
}
