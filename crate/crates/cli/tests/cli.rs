use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mumford-tame")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn no_raw_numbers(v: &Value) -> bool {
    match v {
        Value::Number(_) => false,
        Value::Array(xs) => xs.iter().all(no_raw_numbers),
        Value::Object(m) => m.values().all(no_raw_numbers),
        _ => true,
    }
}

#[test]
fn construct_odd_names_failed_condition() {
    let out = run(&["construct", "--g", "2", "--p", "3"]);
    let v = json(&out);
    assert_eq!(v["schema"], "mumford-tame/1");
    assert!(no_raw_numbers(&v));
    let conds = v["result"]["certificate"]["conditions"].as_array().unwrap();
    for c in conds {
        let id = c["id"].as_str().unwrap();
        let want = if id == "v" { "failed" } else { "verified" };
        assert_eq!(c["status"], want, "{id}");
    }
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(v["failed"], serde_json::json!(["v"]));
}

#[test]
fn construct_two_adic_verifies() {
    let out = run(&["construct", "--g", "1", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["construction"], "two_adic");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["construct", "--g", "0", "--p", "3"]).status.code(), Some(64));
    assert_eq!(run(&["table-check", "--rows", "2-2"]).status.code(), Some(64));
    assert_eq!(run(&["goldbach", "--n", "7"]).status.code(), Some(64));
    assert_eq!(run(&["frobenius", "--f", "x^^2", "--ell", "3"]).status.code(), Some(64));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn igp_exclusion_and_routes() {
    let out = run(&["igp", "--g", "3", "--p", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("table-check"), "{err}");
    let v = json(&run(&["igp", "--g", "3", "--p", "5"]));
    assert_eq!(v["result"]["checklist"]["route"], "2g+1_prime");
    let v = json(&run(&["igp", "--g", "4", "--p", "3"]));
    assert_eq!(v["result"]["checklist"]["triple"]["q3"], "7");
}

#[test]
fn table_check_single_row() {
    let out = run(&["table-check", "--rows", "3-7", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("-> true"));
}

#[test]
fn spec_file_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("mumford-tame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("spec.json");
    std::fs::write(&spec, r#"{"degree": 4, "specs": [{"p": 13, "t": 1, "blocks": [2]}, {"filler": 3}]}"#).unwrap();
    let out_path = dir.join("out.json");
    let out = run(&["construct", "--spec-file", spec.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["outcome"], "verified");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn small_commands() {
    let v = json(&run(&["goldbach", "--n", "10"]));
    assert_eq!(v["result"]["triples"][0]["q1"], "5");
    let v = json(&run(&["excluded", "--g-max", "4"]));
    assert_eq!(v["result"]["rows"][3]["excluded"], serde_json::json!(["5", "7"]));
    let out = run(&["type-check", "--f", "x^3 - 25", "--p", "5", "--t", "2", "--blocks", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&run(&["frobenius", "--f", "x^7 + x^3 + 3*x^2 + x + 1", "--ell", "3"]));
    assert_eq!(v["result"]["frobenius"]["counts"][0], "7");
    let out = run(&["model", "--g", "1", "--p", "3", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["period", "--g", "1", "--p", "3", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
