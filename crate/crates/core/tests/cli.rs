//! End-to-end tests of the binary: flags, exit codes, JSON formats, and
//! cache behavior.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hilbert-strata"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn write_partition(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn partitions_counts_and_listing() {
    let out = run(&["partitions", "--dim", "2", "--n", "4", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "13");

    let out = run(&["partitions", "--dim", "1", "--n", "3"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["m"], 1);
    }

    let out = run(&["partitions", "--dim", "2", "--n", "0", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["partitions", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["partitions", "--dim", "0", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stratum_emits() {
    let dir = tempfile::tempdir().unwrap();
    let minimal = write_partition(
        dir.path(),
        "minimal.json",
        r#"{"m":2,"entries":[[[0,0],2],[[1,0],1],[[0,1],1]]}"#,
    );
    let staircase = write_partition(
        dir.path(),
        "staircase.json",
        r#"{"m":1,"entries":[[[0],3],[[1],2],[[2],1],[[3],1],[[4],1]]}"#,
    );
    let single = write_partition(dir.path(), "single.json", r#"{"m":2,"entries":[[[0,0],1]]}"#);

    let out = run(&["stratum", "--partition", &minimal, "--emit", "class"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "counting polynomial: 2*L^3 - L^2");

    let out = run(&[
        "stratum",
        "--partition",
        &minimal,
        "--emit",
        "class",
        "--assume-polynomial-count",
    ]);
    assert_eq!(stdout(&out).trim(), "class: 2*L^3 - L^2");

    let out = run(&["stratum", "--partition", &staircase, "--emit", "residual"]);
    assert_eq!(stdout(&out).trim(), "affine, dim 5");

    let out = run(&["stratum", "--partition", &single, "--emit", "relations"]);
    assert!(stdout(&out).contains("0 commutator relations"));

    let out = run(&["stratum", "--partition", &single, "--emit", "relations", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["relations"].as_array().unwrap().len(), 0);

    let out = run(&["stratum", "--partition", &single, "--emit", "generators"]);
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines, vec!["z", "y", "x"]);

    let out = run(&["stratum", "--partition", &minimal, "--emit", "variables", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["variables"].as_array().unwrap().len(), 4);

    // malformed partitions are rejected
    let bad = write_partition(
        dir.path(),
        "bad.json",
        r#"{"m":2,"entries":[[[1,0],1]]}"#,
    );
    let out = run(&["stratum", "--partition", &bad, "--emit", "variables"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let minimal = write_partition(
        dir.path(),
        "minimal.json",
        r#"{"m":2,"entries":[[[0,0],2],[[1,0],1],[[0,1],1]]}"#,
    );
    let out = run(&[
        "stratum",
        "--partition",
        &minimal,
        "--emit",
        "class",
        "--budget",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn punctual_and_global_tables() {
    let out = run(&["punctual", "--dim", "2", "--n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l.trim() == "5  L^8 + 2*L^7 + 4*L^6 + 5*L^5 + 5*L^4 + 3*L^3 + 2*L^2 + L + 1"));

    let out = run(&["global", "--n", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out)
        .lines()
        .any(|l| l.trim() == "3  L^9 + L^8 + 2*L^7 + L^6 + L^5"));

    // dim-1 rows match the closed form via the JSON output
    let out = run(&["punctual", "--dim", "1", "--n", "8", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    // n = 8: sum over partitions beta of L^{8-|beta|}. By part count the 22
    // partitions of 8 split 1,4,5,5,3,2,1,1 (for 1..8 parts), so ascending
    // coefficients are 1,1,2,3,5,5,4,1.
    assert_eq!(rows[7]["n"], 8);
    let class8: Vec<i64> = rows[7]["class"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_i64().unwrap())
        .collect();
    assert_eq!(class8, vec![1, 1, 2, 3, 5, 5, 4, 1]);
}

#[test]
fn punctual_breakdown_lists_strata() {
    let out = run(&["punctual", "--dim", "2", "--n", "2", "--breakdown"]);
    let text = stdout(&out);
    assert!(text.contains("[affine]"));
    assert_eq!(text.matches("m=2;").count(), 1 + 3);
}

#[test]
fn verify_passes_and_detects_cache_mutation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_str = cache.to_string_lossy().into_owned();

    // warm the cache
    let out = run(&[
        "punctual", "--dim", "2", "--n", "3", "--cache", &cache_str,
    ]);
    assert!(out.status.success());
    assert!(cache.exists());

    // clean verify with the warm cache
    let out = run(&[
        "verify", "--dim", "2", "--n", "3", "--q", "2,3", "--samples", "20", "--cache", &cache_str,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"commute_ok\":true"));
    assert!(text.contains("\"check\":\"cache-consistency\",\"ok\":true"));

    // mutate one cached class and watch verification fail
    let contents = std::fs::read_to_string(&cache).unwrap();
    let mutated = contents.replacen("\"class\":[0,1]", "\"class\":[7,1]", 1);
    assert_ne!(contents, mutated, "expected a [0,1] class in the cache");
    std::fs::write(&cache, mutated).unwrap();
    let out = run(&[
        "verify", "--dim", "2", "--n", "3", "--q", "2", "--samples", "5", "--cache", &cache_str,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"check\":\"cache-consistency\",\"ok\":false"));
}

#[test]
fn warm_cache_reruns_are_byte_identical_noops() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_str = cache.to_string_lossy().into_owned();
    let first = run(&["punctual", "--dim", "2", "--n", "3", "--cache", &cache_str, "--json"]);
    let cache_after_first = std::fs::read(&cache).unwrap();
    let second = run(&["punctual", "--dim", "2", "--n", "3", "--cache", &cache_str, "--json"]);
    let cache_after_second = std::fs::read(&cache).unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(cache_after_first, cache_after_second);
}

#[test]
fn cache_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env-cache.jsonl");
    let out = bin()
        .args(["punctual", "--dim", "1", "--n", "2"])
        .env("HILBERT_STRATA_CACHE", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(cache.exists());
}

#[test]
fn stability_table_rows() {
    let out = run(&["stability", "--dim", "2", "--n-max", "5", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let values = |k: usize| -> Vec<String> {
        rows[k]["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(values(0), vec!["1", "1", "1", "1", "1"]);
    assert_eq!(values(2), vec!["0", "1", "2", "2", "2"]);
    assert_eq!(values(3), vec!["0", "0", "1", "3", "3"]);
    assert_eq!(rows[0]["stable"], true);
    assert_eq!(rows[8]["stable"], false);
}
