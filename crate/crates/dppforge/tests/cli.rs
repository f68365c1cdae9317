use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().expect("run forge")
}

fn export(name: &str, dir: &Path) -> String {
    let path = dir.join(format!("{name}.json")).to_string_lossy().into_owned();
    let out = forge(&["catalog", "export", name, "-o", &path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn exported_catalog_documents_pass_their_checks() {
    let dir = tempfile::tempdir().unwrap();
    for (name, cmd) in [("A2", "algebra"), ("P3", "bialgebra"), ("DOUBLE_A2", "bialgebra"), ("PB6", "bialgebra")] {
        let path = export(name, dir.path());
        let out = forge(&["--format", "json", "check", cmd, &path]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["passed"], Value::Bool(true), "{name}");
    }
}

#[test]
fn corrupted_document_fails_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = export("DOUBLE_A2", dir.path());
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // e2∘e2 := e2 breaks (e2∘e2)∘f1 = e2∘(e2∘f1).
    for t in doc["products"]["circ"].as_array_mut().unwrap() {
        if t["left"] == "e2" && t["right"] == "e2" {
            t["result"] = serde_json::json!({"e2": "1"});
        }
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = forge(&["--format", "json", "check", "algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["passed"], Value::Bool(false));
    let failing: Vec<&Value> = report["results"].as_array().unwrap().iter().filter(|r| r["status"] == "fail").collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| !r["witnesses"].as_array().unwrap().is_empty()));
}

#[test]
fn double_of_a2_is_factorizable() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = export("A2", dir.path());
    let dbl = dir.path().join("double.json");
    let out = forge(&["build", "double", &a2, "-o", dbl.to_str().unwrap()]);
    assert!(out.status.success());
    let out = forge(&["--format", "json", "ybe", "classify", dbl.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"factorizable\""), "{text}");
    let out = forge(&["ybe", "classify", dbl.to_str().unwrap()]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("factorizable                   true"), "{text}");
    assert!(text.contains("det_i                          1"), "{text}");
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = export("PB6", dir.path());
    let a = forge(&["--format", "json", "check", "bialgebra", &path]);
    let b = forge(&["--format", "json", "check", "bialgebra", &path]);
    assert_eq!(a.stdout, b.stdout);
    let again = export("PB6", &dir.path().join(".."));
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(forge(&["bogus"]).status.code(), Some(2));
    assert_eq!(forge(&["check", "algebra", "/nonexistent/doc.json"]).status.code(), Some(2));
    assert_eq!(forge(&["catalog", "show", "NOPE"]).status.code(), Some(2));
    assert_eq!(forge(&["graded", "nu", "--label", "not-a-label"]).status.code(), Some(2));
}

#[test]
fn catalog_lists_every_entry() {
    let out = forge(&["catalog", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["A2", "DOUBLE_A2", "P3", "B2", "PB6", "DOUBLE_PB6", "LVF"] {
        assert!(text.contains(name), "{name} missing from {text}");
    }
}

#[test]
fn graded_nu_matches_the_closed_form() {
    let out = forge(&["--format", "json", "graded", "nu", "--label", "1,0,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["passed"], Value::Bool(true));
}
