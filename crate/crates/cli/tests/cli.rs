use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_higgledy")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("higgledy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn construct_to(name: &str, args: &[&str]) -> String {
    let path = scratch(name);
    let p = path.to_str().unwrap().to_string();
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &p]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

#[test]
fn diverted_family_generates_and_has_no_transversal() {
    let input = construct_to("diverted.json", &["diverted", "--field", "5", "--dim", "3"]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&input).unwrap()).unwrap();
    assert_eq!(doc["kind"], "line-set");
    assert_eq!(doc["lines"].as_array().unwrap().len(), 5);

    let out = run(&["verify", "generator", "--input", &input]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["kind"], "generator-report");
    assert_eq!(v["result"]["verdict"], true);
    assert_eq!(v["config"]["what"], "generator");
    assert!(v.get("wall_time_ms").is_none());

    for method in ["geometric", "pluecker"] {
        let v = json(&run(&["verify", "transversal", "--method", method, "--input", &input]));
        assert_eq!(v["result"]["found"], false, "{method}");
    }
    let out = run(&["verify", "sufficiency", "--assert-bound", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical_without_timing() {
    let input = construct_to("tri.json", &["triangle", "--field", "3"]);
    let a = run(&["verify", "transversal", "--input", &input]);
    let b = run(&["verify", "transversal", "--input", &input]);
    assert_eq!(a.stdout, b.stdout);
    let timed = json(&run(&["verify", "transversal", "--timing", "--input", &input]));
    assert!(timed["wall_time_ms"].is_u64());
}

#[test]
fn three_ruling_lines_have_a_transversal_witness() {
    let input = construct_to("ruling.json", &["pg3-three-ruling", "--field", "3"]);
    let v = json(&run(&["verify", "transversal", "--input", &input]));
    assert_eq!(v["result"]["found"], true);
    let meeting = v["result"]["witness"]["meeting_points"].as_array().unwrap();
    assert_eq!(meeting.len(), 3);
}

#[test]
fn design_measure_respects_claimed_bound() {
    let out = run(&["design", "measure", "--construction", "gk-mult", "--field", "11", "--dim", "3", "--s", "2", "--t", "2", "--assert-bound"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["measured"], 4);
    assert_eq!(v["result"]["claimed_bound"]["numer"], 4);
    assert_eq!(v["result"]["claimed_bound"]["denom"], 1);
}

#[test]
fn design_round_trips_through_a_document() {
    let input = construct_to("frs.json", &["gk-frs", "--field", "13", "--dim", "3", "--s", "2", "--t", "3"]);
    let direct = json(&run(&["design", "measure", "--construction", "gk-frs", "--field", "13", "--dim", "3", "--s", "2", "--t", "3"]));
    let via = json(&run(&["verify", "design", "--s", "2", "--input", &input]));
    assert_eq!(direct["result"], via["result"]);
}

#[test]
fn wronskian_summary_is_reproducible() {
    let args = ["design", "wronskian", "--construction", "gk-frs", "--field", "11", "--dim", "4", "--s", "2", "--t", "3", "--samples", "50", "--seed", "9", "--assert-bound"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
    let v = json(&a);
    assert_eq!(v["result"]["bound"], 7);
    assert_eq!(v["result"]["violations"], 0);
}

#[test]
fn search_finds_three_lines_in_pg32() {
    let v = json(&run(&["search", "--field", "2", "--dim", "3", "--max-size", "3"]));
    assert_eq!(v["result"]["generator"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["certified_none_up_to"], 2);
}

#[test]
fn budget_refusals_exit_with_three() {
    let out = run(&["search", "--field", "7", "--dim", "5", "--max-size", "3", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let partial = run(&["search", "--field", "3", "--dim", "3", "--max-size", "3", "--budget", "100000"]);
    assert_eq!(partial.status.code(), Some(3));
    assert!(json(&partial)["result"]["partial"].is_object());
}

#[test]
fn bad_input_is_an_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{\"kind\": \"nothing\"}").unwrap();
    let out = run(&["verify", "generator", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["construct", "tangents", "--field", "3", "--dim", "3", "--count", "9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_prints_one_line_per_criterion() {
    let out = run(&["selftest", "--only", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains(" 1 ")));
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains(" 2 ")));
}
