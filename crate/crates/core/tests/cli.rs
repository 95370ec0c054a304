use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ksep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksep")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn gen(dir: &Path, kind: &[&str]) -> PathBuf {
    let out = dir.join(format!("{}.txt", kind.join("_").replace('-', "")));
    let mut args = vec!["gen"];
    args.extend_from_slice(kind);
    args.extend(["-o", out.to_str().unwrap()]);
    assert!(ksep(&args).status.success());
    out
}

fn solve_json(input: &Path, extra: &[&str]) -> Value {
    let mut args = vec!["solve", input.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = ksep(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn cost(report: &Value) -> u64 {
    report["costs"]["total"].as_u64().unwrap()
}

#[test]
fn example_instances() {
    let dir = TempDir::new().unwrap();
    let k4 = gen(dir.path(), &["clique", "--n", "4"]);
    let r = solve_json(&k4, &["--problem", "vsep", "--k", "2", "--seed", "1"]);
    assert!(cost(&r) >= 2);
    assert_eq!(r["schema"], 1);

    let c6 = gen(dir.path(), &["cycle", "--n", "6"]);
    let r = solve_json(&c6, &["--problem", "esep", "--k", "2", "--seed", "1"]);
    assert!(cost(&r) >= 3);

    let p5 = gen(dir.path(), &["path", "--n", "5"]);
    let r = solve_json(&p5, &["--problem", "vsep", "--k", "10"]);
    assert_eq!(cost(&r), 0);
    assert_eq!(r["frac"], 0.0);
}

#[test]
fn verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let p5 = gen(dir.path(), &["path", "--n", "5"]);
    let empty = write(dir.path(), "empty.sol", "");
    let p = p5.to_str().unwrap();
    assert_eq!(ksep(&["verify", p, empty.to_str().unwrap(), "--problem", "vsep", "--k", "5"]).status.code(), Some(0));

    let k4 = gen(dir.path(), &["clique", "--n", "4"]);
    let out = ksep(&["verify", k4.to_str().unwrap(), empty.to_str().unwrap(), "--problem", "vsep", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["feasible"], false);
    assert_eq!(report["violations"][0]["value"], 4);

    let g = gen(dir.path(), &["random", "--n", "14", "--p", "0.3", "--seed", "5"]);
    for problem in ["vsep", "esep", "ptrans"] {
        let r = solve_json(&g, &["--problem", problem, "--k", "3", "--no-timings"]);
        let ids: Vec<String> = r["removed"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
        let sol = write(dir.path(), &format!("{problem}.sol"), &ids.join("\n"));
        let out = ksep(&["verify", g.to_str().unwrap(), sol.to_str().unwrap(), "--problem", problem, "--k", "3", "--format", "text"]);
        assert_eq!(out.status.code(), Some(0), "{problem}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn subset_needs_red_file() {
    let dir = TempDir::new().unwrap();
    let p7 = gen(dir.path(), &["path", "--n", "7"]);
    let p = p7.to_str().unwrap();
    assert_eq!(ksep(&["solve", p, "--problem", "ssep", "--k", "1"]).status.code(), Some(2));
    let red = write(dir.path(), "red.txt", "0\n3\n6\n");
    let r = solve_json(&p7, &["--problem", "ssep", "--k", "1", "--red-file", red.to_str().unwrap()]);
    assert_eq!(r["red_count"], 3);
    assert_eq!(r["certificate"]["max_red_count"], 1);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.txt", "3 1\n0 7\n");
    let out = ksep(&["solve", bad.to_str().unwrap(), "--problem", "vsep", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(ksep(&["solve", missing.to_str().unwrap(), "--problem", "vsep", "--k", "1"]).status.code(), Some(2));

    let p3 = gen(dir.path(), &["path", "--n", "3"]);
    let p = p3.to_str().unwrap();
    assert_eq!(ksep(&["solve", p, "--problem", "ptrans", "--k", "9"]).status.code(), Some(3));
    assert_eq!(ksep(&["solve", p, "--problem", "vsep", "--k", "1", "--epsilon", "0.7"]).status.code(), Some(2));

    let k5 = gen(dir.path(), &["clique", "--n", "5"]);
    let out = ksep(&["solve", k5.to_str().unwrap(), "--problem", "vsep", "--k", "2", "--max-rounds", "0"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn text_output_and_lp_dump() {
    let dir = TempDir::new().unwrap();
    let c5 = gen(dir.path(), &["cycle", "--n", "5"]);
    let lp = dir.path().join("c5.lp");
    let out = ksep(&["solve", c5.to_str().unwrap(), "--problem", "esep", "--k", "2", "--format", "text", "--dump-lp", lp.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("problem esep k=2 n=5 m=5"));
    assert!(fs::read_to_string(lp).unwrap().contains("Minimize"));

    let r = solve_json(&c5, &["--problem", "vsep", "--k", "2", "--trace", "--trials", "3"]);
    assert_eq!(r["trial_costs"].as_array().unwrap().len(), 3);
    assert!(r["trace"].is_array());
}

#[test]
fn reduce_writes_role_map() {
    let dir = TempDir::new().unwrap();
    let src = write(dir.path(), "tri.txt", "3 3\n0 1\n1 2\n0 2\n");
    let out = dir.path().join("reduced.txt");
    let status = ksep(&["gen", "reduce", src.to_str().unwrap(), "--k", "2", "-o", out.to_str().unwrap()]).status;
    assert!(status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l.starts_with("# k' = ")));
    assert!(!fs::read_to_string(out.with_extension("roles")).unwrap().is_empty());
    let k_prime = text.lines().find_map(|l| l.strip_prefix("# k' = ")).unwrap().trim().to_string();
    let r = solve_json(&out, &["--problem", "vsep", "--k", &k_prime]);
    assert!(r["n"].as_u64().unwrap() > 3);

    let status = ksep(&["gen", "reduce", src.to_str().unwrap(), "--k", "4"]).status;
    assert_eq!(status.code(), Some(2));
}

#[test]
fn bench_suites() {
    let dir = TempDir::new().unwrap();
    let empty = write(dir.path(), "empty.json", r#"{"instances": []}"#);
    let out = ksep(&["bench", empty.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 0);

    let suite = write(
        dir.path(),
        "suite.json",
        r#"{"instances": [{"graph": {"kind": "random", "n": 12, "p": 0.3}, "problem": "vsep", "k": 3, "seeds": 2}]}"#,
    );
    let out = ksep(&["bench", suite.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 4);

    let broken = write(dir.path(), "broken.json", "{");
    assert_eq!(ksep(&["bench", broken.to_str().unwrap()]).status.code(), Some(2));
}
