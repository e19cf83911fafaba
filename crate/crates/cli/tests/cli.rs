use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const EXAMPLE1: &str = "(1|2,3,4,6), (2|4,5,6), (3|1,2,4,5,6), (4|1,2,6), (5|2,3,4,6), (6|-)\n";
const DIC_EXAMPLE: &str = "(1|2,3,4,5), (2|1,3,4,5), (3|2,4,5), (4|3,5), (5|1,4)\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn example1_certificate() -> Value {
    json!({
        "spine": [1, 3, 5],
        "towers": [
            {"edge": 1, "floors": [{"k": 2}, {"k": 6}]},
            {"edge": 2, "floors": [{"k": 4}, {"k": 6}]}
        ]
    })
}

#[test]
fn parse_prints_both_forms() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e1.txt", EXAMPLE1);
    let out = run(&["parse", s(&inst)]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["n"], 6);
    assert_eq!(v["A"]["6"], json!([]));
    assert_eq!(v["B"]["6"], json!([1, 2, 3, 4, 5]));

    let text = run(&["parse", s(&inst), "--format", "text"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap(), EXAMPLE1);

    // the same instance listed by interfering sets
    let b_form = write(&dir, "e1b.txt", "(1|5), (2|1,3), (3|-), (4|3,5), (5|1), (6|1,2,3,4,5)");
    let again = json_of(&run(&["parse", s(&b_form), "--form", "b"]));
    assert_eq!(again, v);
}

#[test]
fn mais_reports_size_bound_and_witness() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e1.txt", EXAMPLE1);
    let v = json_of(&run(&["mais", s(&inst)]));
    assert_eq!(v, json!({"mais_size": 3, "bound": "1/3", "witness": [1, 2, 6]}));
}

#[test]
fn search_then_verify() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e1.txt", EXAMPLE1);
    let out = run(&[
        "search",
        s(&inst),
        "--mode",
        "singleton",
        "--max-m",
        "3",
        "--max-height",
        "2",
    ]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["bound"], "2/7");
    assert_eq!(report["exhaustive"], true);

    let cert = write(&dir, "cert.json", &report["witness"].to_string());
    let verdict = run(&["verify", s(&inst), s(&cert)]);
    assert_eq!(verdict.status.code(), Some(0));
    let v = json_of(&verdict);
    assert_eq!(v["valid"], true);
    assert_eq!(v["bound"], "2/7");
}

#[test]
fn plain_search_and_budget() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e1.txt", EXAMPLE1);
    let plain = json_of(&run(&["search", s(&inst), "--mode", "plain"]));
    assert_eq!(plain["bound"], "1/3");
    let starved = json_of(&run(&["search", s(&inst), "--budget", "1"]));
    assert_eq!(starved["exhaustive"], false);
}

#[test]
fn invalid_certificate_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e1.txt", EXAMPLE1);
    let mut cert = example1_certificate();
    cert["towers"][0]["floors"][0]["k"] = json!(4);
    let cert = write(&dir, "bad.json", &cert.to_string());
    let out = run(&["verify", s(&inst), s(&cert)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["valid"], false);
    assert!(v["bound"].is_null());
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn dic_bound_on_the_distributed_example() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "dic.txt", DIC_EXAMPLE);
    let caps = write(&dir, "caps.json", r#"{"n": 5, "default": "1", "overrides": []}"#);
    let cert = write(
        &dir,
        "cert.json",
        r#"{"spine": [1, 2, 3], "towers": [{"edge": 1, "floors": [{"k": 4}]}, {"edge": 2, "floors": [{"k": 5}]}]}"#,
    );
    let out = run(&["dic-bound", s(&inst), s(&caps), s(&cert)]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["bound"], "54/5");
    assert_eq!(
        v["terms"][0],
        json!({"T_a": [1, 2, 4], "T_b": [1, 3, 4], "value": "26"})
    );
    assert_eq!(v["terms"][1]["value"], "28");
}

#[test]
fn lp_with_export_and_zy() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e1.txt", EXAMPLE1);
    let export = dir.path().join("model.json");
    let out = run(&["lp", s(&inst), "--objective", "sym", "--export", s(&export)]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["value"], "2/7");
    assert_eq!(v["objective"], "sym");
    assert_eq!(v["constraints"]["symmetry"], 5);
    let model: Value = serde_json::from_str(&fs::read_to_string(&export).unwrap()).unwrap();
    assert_eq!(model["variables"].as_array().unwrap().len(), 63 + 6);

    let zy = run(&[
        "lp",
        s(&inst),
        "--objective",
        "sym",
        "--zy",
        "[[[1,2],[1,3],[2,3],[1,2,3]]]",
    ]);
    assert!(zy.status.success());
    let with = json_of(&zy);
    assert_eq!(with["constraints"]["non_shannon"], 1);
    assert_eq!(with["value"], "2/7");
}

#[test]
fn compare_table_for_example1() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e1.txt", EXAMPLE1);
    let out = run(&["compare", s(&inst)]);
    assert!(out.status.success());
    let v = json_of(&out);
    let bounds: Vec<&str> = ["R_MAIS", "R_Delta", "R_SW", "R_DW", "LP"]
        .iter()
        .map(|k| v[k]["bound"].as_str().unwrap())
        .collect();
    assert_eq!(bounds, ["1/3", "1/3", "2/7", "2/7", "2/7"]);
    assert_eq!(v["violations"], json!([]));
}

#[test]
fn output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e1.txt", EXAMPLE1);
    let a = run(&["compare", s(&inst)]).stdout;
    let b = run(&["compare", s(&inst)]).stdout;
    assert_eq!(a, b);
}

#[test]
fn json_instances_are_accepted() {
    let dir = TempDir::new().unwrap();
    // each receiver knows the other message: a 2-cycle
    let known = write(&dir, "a.json", r#"{"n": 2, "A": {"1": [2], "2": [1]}}"#);
    assert_eq!(json_of(&run(&["mais", s(&known)]))["mais_size"], 1);
    // nobody knows anything
    let unknown = write(&dir, "b.json", r#"{"n": 2, "B": {"1": [2], "2": [1]}}"#);
    assert_eq!(json_of(&run(&["mais", s(&unknown)]))["mais_size"], 2);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e1.txt", EXAMPLE1);
    let bad = write(&dir, "bad.txt", "(1|2), (1|-)");

    let seeded = run(&["mais", s(&inst), "--seed", "7"]);
    assert_eq!(seeded.status.code(), Some(2));

    let parse = run(&["mais", s(&bad)]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(json_of(&parse)["error"].is_string());

    let missing = run(&["mais", "/nonexistent/instance.txt"]);
    assert_eq!(missing.status.code(), Some(2));

    assert_eq!(run(&["search", s(&inst), "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(
        run(&["lp", s(&inst), "--zy", "[[[9],[1],[1],[1]]]"]).status.code(),
        Some(2)
    );
}
