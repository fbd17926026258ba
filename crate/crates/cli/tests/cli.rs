use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_m3lattice")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--report", "json"]);
    let o = run(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

#[test]
fn info_pentagon() {
    let o = run(&["info", "--lattice", "n5"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("size: 5"), "{s}");
    assert!(s.contains("modular: false"), "{s}");
    assert!(s.contains("rank: 2"), "{s}");
}

#[test]
fn info_witness() {
    let v = json(&["info", "--lattice", "witness7"]);
    assert_eq!(v["rank"], 3);
    assert_eq!(v["size"], 7);
}

#[test]
fn info_reports_cap_overflow() {
    let v = json(&["info", "--lattice", "l:4", "--cap", "3"]);
    assert!(v["rank"].is_null());
}

#[test]
fn validate_files() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = dir.path().join("cycle.json");
    std::fs::write(&cyc, r#"{"elements": ["a", "b"], "covers": [[0, 1], [1, 0]]}"#).unwrap();
    assert_eq!(run(&["validate", cyc.to_str().unwrap()]).status.code(), Some(1));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(3));

    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["validate", missing.to_str().unwrap()]).status.code(), Some(3));

    let o = run(&["validate", data("fano.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("16 elements"));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(&["info", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["diverge"]).status.code(), Some(2));
    assert_eq!(run(&["info", "--lattice", "q9"]).status.code(), Some(3));
    assert_eq!(run(&["info", "--lattice", "m2"]).status.code(), Some(3));
}

#[test]
fn write_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m3n5.json");
    let o = run(&["m3build", "--lattice", "n5", "--write", out.to_str().unwrap(), "--rank"]);
    assert!(o.status.success());
    let v = json(&["info", "--lattice", &format!("file:{}", out.display())]);
    let m = json(&["m3build", "--lattice", "n5"]);
    assert_eq!(v["size"], m["size"]);
    assert_eq!(v["rank"], 2);
    assert_eq!(json(&["m4build", "--lattice", "c3"])["size"], 15);
}

#[test]
fn rank_commands() {
    assert_eq!(run(&["rank", "--lattice", "n5", "--gamma", "1"]).status.code(), Some(1));
    assert!(run(&["rank", "--lattice", "n5", "--gamma", "2"]).status.success());
    let v = json(&["rank", "--lattice", "m3:m4", "--antichains"]);
    assert_eq!(v["total"], 89217);
    assert_eq!(v["failing"][1], 936);
    assert_eq!(v["failing"][2], 0);
    assert_eq!(json(&["rank", "--lattice", "l:3"])["rank"], 4);
}

#[test]
fn jobs_do_not_change_results() {
    let a = run(&["rank", "--lattice", "m3:m5", "--antichains", "--jobs", "1"]);
    let b = run(&["rank", "--lattice", "m3:m5", "--antichains", "--jobs", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn congruences() {
    let v = json(&["con", "--lattice", "n5", "--cpe", "both"]);
    assert_eq!(v["size"], 5);
    assert_eq!(v["cpe"][0]["passed"], true);
    assert_eq!(v["cpe"][1]["passed"], true);
}

#[test]
fn tensors() {
    let v = json(&["tensor", "--lattice", "m3", "--with", "n5", "--verify"]);
    assert_eq!(v["verify"]["passed"], true);
    assert_eq!(json(&["tensor", "--lattice", "m3", "--with", "c2"])["size"], 5);
    let v = json(&["tensor", "--lattice", "c2sq", "--m3"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["tensor_size"], 25);
}

#[test]
fn divergence() {
    let o = run(&["diverge", "--oracle", "dhw", "--steps", "6", "--trace", "json"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let trace: Vec<String> = serde_json::from_str(s.lines().last().unwrap()).unwrap();
    assert_eq!(trace.len(), 8);
    assert_eq!(trace[3], "<4,inf> <3,inf> <inf,3> <inf,4>");
    let v = json(&["diverge", "--oracle", "fig2"]);
    assert_eq!(v["diverges"], true);
    assert_eq!(v["steps"], 64);
}

#[test]
fn repro_subset() {
    let v = json(&["repro", "--filter", "m3m4"]);
    assert_eq!(v["failed"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert_eq!(checks[0]["id"], "m3m4-antichains");
    assert_eq!(checks[0]["origin"], "published");
    assert_eq!(checks[0]["computed"], "89217 / 936 / 0");
    assert_eq!(run(&["repro", "--filter", "nothing-matches"]).status.code(), Some(3));
}

#[test]
fn seeded_random_lattices() {
    let a = json(&["info", "--lattice", "random:4x3", "--seed", "5"]);
    let b = json(&["info", "--lattice", "random:4x3", "--seed", "5"]);
    assert_eq!(a, b);
    assert!(a["rank"].as_u64().unwrap() <= 3);
}
