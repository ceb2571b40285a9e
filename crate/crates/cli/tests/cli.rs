use std::path::Path;
use std::process::{Command, Output};

use grcodes::oracle::ideals_equal;
use grcodes::spec_file::CodeSpec;
use serde_json::Value;

fn grcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grcodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_spec(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn analyze_json(spec: &str) -> Value {
    let o = grcodes(&["analyze", "--spec", spec, "--check"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn eta_table_rows() {
    let o = grcodes(&["table", "--p", "2", "--s", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let distances: Vec<String> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().to_string())
        .collect();
    assert_eq!(distances, ["1", "2", "2", "2", "2", "4", "4", "8", "none"]);
}

#[test]
fn tables_are_deterministic() {
    let args = ["table", "--p", "3", "--s", "2", "--format", "json"];
    assert_eq!(grcodes(&args).stdout, grcodes(&args).stdout);
}

#[test]
fn two_factor_table() {
    let o = grcodes(&["table", "--p", "3", "--s", "1", "--mode", "two_eta_ps", "--format", "json"]);
    assert!(o.status.success());
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 16);
    let o = grcodes(&["table", "--p", "2", "--s", "1", "--mode", "two_eta_ps"]);
    assert!(!o.status.success());
    let o = grcodes(&["table", "--p", "5", "--s", "1", "--format", "text"]);
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().ends_with("d=1"));
    assert!(text.lines().last().unwrap().ends_with("d=none"));
}

#[test]
fn analyze_examples() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "a.json",
        r#"{"ring":{"p":2,"a":2,"m":1},"f":{"form":"cyclic","length":4},"generators":["(x-1)^3"]}"#,
    );
    let r = analyze_json(&spec);
    assert_eq!(r["torsional_degrees"][0]["degrees"], serde_json::json!([3, 2]));
    assert_eq!(r["distance"]["distance"], 2);
    assert_eq!(r["distance"]["oracle_checked"], true);

    let spec = write_spec(
        dir.path(),
        "b.json",
        r#"{"ring":{"p":3,"a":1,"m":1},"f":{"form":"lambda-cyclic","length":6,"lambda":1},
            "generators":["(x-1)^2*(x+1)^1"]}"#,
    );
    assert_eq!(analyze_json(&spec)["distance"]["distance"], 3);

    let spec = write_spec(
        dir.path(),
        "c.json",
        r#"{"ring":{"p":2,"a":2,"m":1},"f":{"form":"cyclic","length":4},"generators":["0"]}"#,
    );
    assert!(analyze_json(&spec)["distance"].is_null());
}

#[test]
fn analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{"ring":{"p":3,"a":2,"m":1},"f":{"form":"cyclic","length":6},
                   "generators":["(x-1)^2*(x+1)", "p*(x+1)^2", "x^4 + 2x"]}"#;
    let spec = write_spec(dir.path(), "orig.json", body);
    let out = dir.path().join("report.json");
    let o = grcodes(&["analyze", "--spec", &spec, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let again = grcodes(&["analyze", "--spec", out.to_str().unwrap()]);
    assert!(again.status.success());
    let original = CodeSpec::from_json_str(body).unwrap().build().unwrap();
    let report = std::fs::read_to_string(&out).unwrap();
    let reingested = CodeSpec::from_json_str(&report).unwrap().build().unwrap();
    assert!(ideals_equal(&original, &reingested));
    // the standard form is a fixed point
    let first: Value = serde_json::from_str(&report).unwrap();
    let second: Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(first["standard_form"], second["standard_form"]);
}

#[test]
fn text_report() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "t.json",
        r#"{"ring":{"p":2,"a":2,"m":1},"f":{"form":"cyclic","length":4},"generators":["p*(x-1)"]}"#,
    );
    let o = grcodes(&["analyze", "--spec", &spec, "--format", "text", "--check"]);
    let text = stdout(&o);
    assert!(text.contains("torsional degrees [4,1]"), "{text}");
    assert!(text.contains("brute force agrees"), "{text}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(dir.path(), "bad.json", r#"{"ring": "#);
    assert_eq!(grcodes(&["analyze", "--spec", &bad]).status.code(), Some(2));
    let bad = write_spec(
        dir.path(),
        "bad2.json",
        r#"{"ring":{"p":2,"a":2,"m":1},"f":{"form":"cyclic","length":4},"generators":["(x-1"]}"#,
    );
    assert_eq!(grcodes(&["analyze", "--spec", &bad]).status.code(), Some(2));
    assert_eq!(grcodes(&["analyze"]).status.code(), Some(2));
    let o = grcodes(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let o = grcodes(&["verify", "--criterion", "2", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_scopes() {
    let o = grcodes(&["verify", "--paper-tables", "--format", "text", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 3);
    let o = grcodes(&["verify", "--criterion", "7", "--instances", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let summary: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["criteria"][0]["checks"], 1200);
}
