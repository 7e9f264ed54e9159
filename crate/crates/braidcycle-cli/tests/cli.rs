use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidcycle")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

const KNOT_8_9: &str = "-1 2 -1 -1 -1 2 2 2";

#[test]
fn invariant_examples() {
    assert_eq!(stdout(&["invariant", "--braid", "1 -2 -3", "--n", "4", "--family", "deg0:(1,2)-"]), "-1\n");
    assert_eq!(stdout(&["invariant", "--braid", "1 -2 1 2 1 1 2 1", "--n", "3", "--family", "degd-l:1"]), "x - x^-1\n");
    assert_eq!(stdout(&["invariant", "--braid", "1", "--n", "2", "--family", "deg0:(1,1)+"]), "0\n");
}

#[test]
fn invariant_json() {
    let v = json(&["invariant", "--braid", "1 -2 1 2 1 1 2 1", "--n", "3", "--family", "degd-l:2"]);
    assert_eq!(v["text"], "x");
    assert_eq!(v["family"], "degd-l:2");
    assert_eq!(v["braid"]["letters"].as_array().unwrap().len(), 8);
}

#[test]
fn literal_normalization_keeps_constant_terms() {
    let args = ["invariant", "--braid", "1 1 1 2 2 1 2 1", "--n", "3", "--family", "degd-l:2"];
    let reduced = stdout(&args);
    let mut lit = args.to_vec();
    lit.extend(["--normalization", "literal"]);
    let literal = stdout(&lit);
    assert_eq!(reduced, "x^3 + x\n");
    assert!(literal.starts_with("x^3 + x"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["invariant", "--braid", "1 x", "--n", "3", "--family", "deg0:(1,1)-"]), 2);
    assert_eq!(code(&["invariant", "--braid", "1 5", "--n", "3", "--family", "deg0:(1,1)-"]), 2);
    assert_eq!(code(&["invariant", "--n", "3"]), 2);
    assert_eq!(code(&["invariant", "--braid", "1 1", "--n", "2", "--family", "deg0:(1,1)+"]), 3);
    assert_eq!(code(&["invariant", "--braid", "1 2", "--n", "3", "--family", "degd-q:1"]), 4);
    assert_eq!(code(&["invariant", "--braid", "1 2 3", "--n", "4", "--family", "degd-l:1"]), 4);
    assert_eq!(code(&["invariant", "--braid", "1 2", "--n", "3", "--family", "deg1-nm2"]), 4);
    assert_eq!(code(&["characters", "--braid", "1 2 3", "--n", "4", "--degree", "2"]), 4);
}

#[test]
fn distinguish_8_9() {
    let v = json(&["distinguish", "--braid", KNOT_8_9, "--n", "3", "--l", "3"]);
    assert_eq!(v["result"], "DISTINGUISHED");
    let pair = v["witness"].as_array().unwrap();
    assert_eq!(pair.len(), 2);
    let entry = &pair[0]["entries"][0];
    assert!(entry["type"].is_string() && entry["names"].is_array() && entry["value"].is_i64());
}

#[test]
fn distinguish_compatible() {
    let text = stdout(&["distinguish", "--braid", KNOT_8_9, "--n", "3", "--l", "3", "--against", KNOT_8_9]);
    assert_eq!(text, "CONJUGACY-COMPATIBLE\n");
    let conj = "2 -1 2 -1 -1 -1 2 2 2 -2";
    let v = json(&["distinguish", "--braid", KNOT_8_9, "--n", "3", "--l", "2", "--against", conj, "--degree", "1"]);
    assert_eq!(v["result"], "CONJUGACY-COMPATIBLE");
    assert!(v["witness"].is_null());
}

#[test]
fn trace_summaries() {
    let v = json(&["trace", "--braid", "2 -1", "--n", "3"]);
    assert_eq!(v["summary"]["triple_nodes"], 4);
    assert_eq!(v["summary"]["circles"].as_array().unwrap().len(), 2);
    assert_eq!(v["summary"]["markings"], serde_json::json!([1, 2]));
    let v = json(&["trace", "--braid", "1", "--n", "2"]);
    assert_eq!(v["summary"]["triple_nodes"], 0);
    assert_eq!(v["summary"]["circles"].as_array().unwrap().len(), 1);
    let v = json(&["trace", "--braid", KNOT_8_9, "--n", "3", "--l", "3"]);
    assert_eq!(v["summary"]["circles"].as_array().unwrap().len(), 6);
}

#[test]
fn trace_writes_dot() {
    let path = std::env::temp_dir().join(format!("braidcycle-{}.dot", std::process::id()));
    let p = path.to_str().unwrap();
    stdout(&["trace", "--braid", "2 -1", "--n", "3", "--dot", p]);
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(dot.starts_with("graph trace {"));
    assert_eq!(dot.matches("shape=circle").count(), 4);
    let bad = std::env::temp_dir().join("no-such-dir").join("x.dot");
    let out = run(&["trace", "--braid", "2 -1", "--n", "3", "--dot", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-dir"));
}

#[test]
fn characters_tables() {
    let v = json(&["characters", "--braid", KNOT_8_9, "--n", "3", "--l", "3"]);
    assert_eq!(v["circles"].as_array().unwrap().len(), 6);
    assert_eq!(v["tables"][0]["entries"].as_array().unwrap().len(), 42);
    let v = json(&["characters", "--braid", "1 1 1 2 2 1 2 1", "--n", "3", "--family", "degd-l:1"]);
    let total: usize = v["tables"][0]["entries"].as_array().unwrap().len();
    assert!(total > 0);
    let v = json(&["characters", "--braid", "1 1 1 2 2 1 2 1", "--n", "3", "--degree", "2"]);
    assert_eq!(v["tables"].as_array().unwrap().len(), 4);
}

#[test]
fn cable_output() {
    assert_eq!(stdout(&["cable", "--braid", "1", "--n", "2", "--k", "2"]), "n: 4\nbraid: 2 1 3 2\nknot: false\n");
    let v = json(&["cable", "--braid", "1 2 3 4", "--n", "5", "--k", "2", "--twist"]);
    assert_eq!(v["braid"]["n"], 10);
    assert_eq!(v["knot"], true);
    assert_eq!(code(&["cable", "--braid", "1", "--n", "2", "--k", "0"]), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["characters", "--braid", KNOT_8_9, "--n", "3", "--l", "2", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
