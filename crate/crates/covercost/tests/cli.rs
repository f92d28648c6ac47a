//! End-to-end tests of the `covercost` binary: output formats, JSON
//! schemas, exit codes and file round trips.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn covercost(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covercost"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn write_graph(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn compute_hitting_json_schema_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = write_graph(dir.path(), "p2.txt", "3\n0 1\n1 2\n");
    let out = covercost(&[
        "compute", "--graph", &p2, "--root", "0", "--method", "hitting", "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["CC", "cc", "elapsed_seconds", "method", "n", "root"]);
    assert_eq!(obj["method"], "hitting");
    assert_eq!(obj["root"], 0);
    assert_eq!(obj["n"], 2);
    assert!((obj["cc"].as_f64().unwrap() - 2.5).abs() < 1e-9);
    assert!((obj["CC"].as_f64().unwrap() - 5.0).abs() < 1e-9);
    // CC = n * cc to 1e-12.
    let n = obj["n"].as_f64().unwrap();
    let residual = (obj["CC"].as_f64().unwrap() - n * obj["cc"].as_f64().unwrap()).abs();
    assert!(residual <= 1e-12 * obj["CC"].as_f64().unwrap().abs());
}

#[test]
fn compute_methods_agree_on_text_output() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = write_graph(dir.path(), "p2.txt", "3\n0 1\n1 2\n");
    for method in ["hitting", "theorem", "dvector", "tree", "closed_form"] {
        let out = covercost(&["compute", "--graph", &p2, "--root", "0", "--method", method]);
        assert!(out.status.success(), "{method} failed");
        let text = stdout(&out);
        assert!(text.contains("cc=2.5"), "{method}: {text}");
        assert!(text.contains("CC=5"), "{method}: {text}");
    }
}

#[test]
fn compute_tree_method_on_star() {
    let dir = tempfile::tempdir().unwrap();
    let star3 = write_graph(dir.path(), "star3.txt", "4\n0 1\n0 2\n0 3\n");
    let out = covercost(&[
        "compute", "--graph", &star3, "--root", "0", "--method", "tree", "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["CC"].as_f64().unwrap() - 15.0).abs() < 1e-9);
}

#[test]
fn compute_all_roots_table() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = write_graph(dir.path(), "p2.txt", "3\n0 1\n1 2\n");
    let out = covercost(&["compute", "--graph", &p2, "--root", "all"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("root 0: cc=2.5 CC=5"));
    assert!(text.contains("root 1: cc=3 CC=6"));
    assert!(text.contains("root 2: cc=2.5 CC=5"));

    let out = covercost(&["compute", "--graph", &p2, "--root", "all", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["root"], "all");
    assert_eq!(v["roots"].as_array().unwrap().len(), 3);
    assert!((v["roots"][1]["CC"].as_f64().unwrap() - 6.0).abs() < 1e-9);
}

#[test]
fn simulate_forced_walk_json() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write_graph(dir.path(), "k2.txt", "2\n0 1\n");
    let out = covercost(&[
        "simulate", "--graph", &k2, "--root", "0", "--walks", "100", "--seed", "1", "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        ["ci95_cost", "ci95_steps", "mean_cost", "mean_steps", "rng", "seed", "walks"]
    );
    assert_eq!(obj["walks"], 100);
    assert_eq!(obj["seed"], 1);
    assert_eq!(obj["mean_cost"], 1.0);
    assert_eq!(obj["ci95_cost"], 0.0);
}

#[test]
fn simulate_echoes_defaulted_seed_and_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write_graph(dir.path(), "k2.txt", "2\n0 1\n");
    let out = covercost(&["simulate", "--graph", &k2, "--root", "0", "--walks", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("seed="), "seed not echoed: {text}");
    assert!(text.contains("cc/CT ratio estimate: 1"), "{text}");
}

#[test]
fn simulate_is_replayable_from_echoed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let star = write_graph(dir.path(), "s5.txt", "6\n0 1\n0 2\n0 3\n0 4\n0 5\n");
    let args = [
        "simulate", "--graph", &star, "--root", "0", "--walks", "500", "--seed", "42", "--json",
    ];
    let first = stdout(&covercost(&args));
    let second = stdout(&covercost(&args));
    assert_eq!(first, second);
}

#[test]
fn verify_suite_runs_and_reports() {
    let out = covercost(&["verify", "--suite", "oracle"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("suite oracle:"));
    assert!(text.contains("[PASS]"));
    assert!(text.contains("all checks passed"));
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = covercost(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_writes_deterministic_files_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("t1.txt");
    let b = dir.path().join("t2.txt");
    for path in [&a, &b] {
        let out = covercost(&[
            "gen", "random_tree", "10", "--seed", "7", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(String::from_utf8_lossy(&out.stderr).contains("seed=7"));
    }
    let body_a = std::fs::read_to_string(&a).unwrap();
    let body_b = std::fs::read_to_string(&b).unwrap();
    assert_eq!(body_a, body_b);

    // The generated file feeds straight back into compute.
    let out = covercost(&[
        "compute", "--graph", a.to_str().unwrap(), "--root", "0", "--method", "tree", "--json",
    ]);
    assert!(out.status.success());
}

#[test]
fn gen_to_stdout() {
    let out = covercost(&["gen", "path", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# path n=10\n11\n"));
    assert_eq!(text.lines().count(), 12);

    let out = covercost(&["gen", "star", "20"]);
    let text = stdout(&out);
    assert!(text.contains("21\n0 1\n"));
}

#[test]
fn gen_gnp_requires_probability() {
    let out = covercost(&["gen", "gnp", "30", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = covercost(&["gen", "gnp", "30", "0.2", "--seed", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("# gnp n=30 p=0.2 seed=5"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // Missing file.
    let out = covercost(&["compute", "--graph", "missing.txt", "--root", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // Disconnected graph.
    let bad = write_graph(dir.path(), "bad.txt", "4\n0 1\n2 3\n");
    let out = covercost(&["compute", "--graph", &bad, "--root", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
    // Root out of range.
    let p2 = write_graph(dir.path(), "p2.txt", "3\n0 1\n1 2\n");
    let out = covercost(&["compute", "--graph", &p2, "--root", "9"]);
    assert_eq!(out.status.code(), Some(2));
    // Tree method on a non-tree.
    let c4 = write_graph(dir.path(), "c4.txt", "4\n0 1\n1 2\n2 3\n3 0\n");
    let out = covercost(&["compute", "--graph", &c4, "--root", "0", "--method", "tree"]);
    assert_eq!(out.status.code(), Some(2));
    // closed_form on an unsupported family.
    let out = covercost(&[
        "compute", "--graph", &c4, "--root", "0", "--method", "closed_form",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    let out = covercost(&["compute"]);
    assert_eq!(out.status.code(), Some(1));
    let out = covercost(&["nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    let out = covercost(&["gen", "mystery", "5"]);
    assert_eq!(out.status.code(), Some(1));
}
