//! Golden corpus for the command line contract: exit codes, JSON shapes,
//! and byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn prismlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prismlab"))
}

fn run(args: &[&str]) -> Output {
    prismlab().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is valid JSON")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("prismlab-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn build_reports_f_vector() {
    let out = run(&["build", "3", "2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["f_vector"], serde_json::json!([12, 24, 14]));
}

#[test]
fn build_lists_hexagon_edges() {
    let out = run(&["build", "2", "2", "--dim", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 6);
    let expected: Vec<serde_json::Value> = [
        vec![vec![0], vec![1, 2]],
        vec![vec![0, 1], vec![2]],
        vec![vec![0, 2], vec![1]],
        vec![vec![1], vec![0, 2]],
        vec![vec![1, 2], vec![0]],
        vec![vec![2], vec![0, 1]],
    ]
    .iter()
    .map(|parts| serde_json::json!({ "parts": parts }))
    .collect();
    for e in &expected {
        assert!(cells.contains(e), "missing {e}");
    }
}

#[test]
fn build_rejects_empty_complex_parameters() {
    let out = run(&["build", "1", "3"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn build_writes_output_file() {
    let path = temp_path("build.json");
    let out = run(&["build", "2", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([6, 6]));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_passes_and_fails_by_exit_code() {
    let out = run(&["verify", "3", "2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], serde_json::json!(true));

    let out = run(&["verify", "6", "3"]);
    assert_eq!(code(&out), 0);

    // degenerate: N < r
    let out = run(&["verify", "1", "5"]);
    assert_eq!(code(&out), 2);
    let out = run(&["verify", "2", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn homology_of_the_sphere_instance() {
    let out = run(&["homology", "3", "2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let groups = v["groups"].as_array().unwrap();
    let ranks: Vec<u64> = groups
        .iter()
        .map(|g| g["free_rank"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, vec![0, 0, 1]);
    assert!(groups
        .iter()
        .all(|g| g["torsion"].as_array().unwrap().is_empty()));
    assert_eq!(v["reduced"], serde_json::json!(true));
    assert_eq!(v["euler_characteristic"], serde_json::json!(2));

    let out = run(&["homology", "3", "2", "--unreduced"]);
    let v = stdout_json(&out);
    assert_eq!(v["groups"][0]["free_rank"], serde_json::json!(1));
}

#[test]
fn quotient_counts() {
    let out = run(&["quotient", "4", "3"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["quotient_f_vector"], serde_json::json!([10, 30, 25]));
    assert_eq!(v["group_order"], serde_json::json!(6));

    let out = run(&["quotient", "2", "2", "--dim", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["orbits"]["orbits"].as_array().unwrap().len(), 3);
}

#[test]
fn tverberg_finds_radon_partition() {
    let path = temp_path("radon4.txt");
    std::fs::write(&path, "0 0\n1 0\n1 1\n0 1\n").unwrap();
    let out = run(&[
        "tverberg",
        "--dim",
        "2",
        "--parts",
        "2",
        "--points",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["found"], serde_json::json!(true));
    assert_eq!(
        v["certificate"]["witness"],
        serde_json::json!(["1/2", "1/2"])
    );
    std::fs::remove_file(&path).ok();
}

#[test]
fn tverberg_none_without_guarantee() {
    let path = temp_path("two-points.txt");
    std::fs::write(&path, "0 0\n2 0\n").unwrap();
    let out = run(&[
        "tverberg",
        "--dim",
        "2",
        "--parts",
        "2",
        "--points",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["found"], serde_json::json!(false));
    assert_eq!(v["guarantee"], serde_json::json!(false));
    assert_eq!(v["theorem_violation"], serde_json::json!(false));
    std::fs::remove_file(&path).ok();
}

#[test]
fn tverberg_parse_errors_exit_two() {
    let path = temp_path("bad.txt");
    std::fs::write(&path, "a b\n").unwrap();
    let out = run(&[
        "tverberg",
        "--dim",
        "2",
        "--parts",
        "2",
        "--points",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    std::fs::remove_file(&path).ok();

    let out = run(&[
        "tverberg",
        "--dim",
        "2",
        "--parts",
        "2",
        "--points",
        "/nonexistent-file",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn export_matrix_writes_sorted_triples() {
    let path = temp_path("hexagon-d1.txt");
    let out = run(&[
        "export-matrix",
        "2",
        "2",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["rows"], serde_json::json!(6));
    assert_eq!(v["cols"], serde_json::json!(6));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("6 6 12"));
    let triples: Vec<Vec<i64>> = lines
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(triples.len(), 12);
    let keys: Vec<(i64, i64)> = triples.iter().map(|t| (t[0], t[1])).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    std::fs::remove_file(&path).ok();

    let out = run(&[
        "export-matrix",
        "2",
        "2",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_generic_decides_fixture_files() {
    let sat = temp_path("lone.json");
    std::fs::write(
        &sat,
        r#"{"top_cells": [{"id": "t", "factors": [2]}],
            "codim1": [{"id": "e", "cofaces": [{"top": "t", "induced_sign_if_plus": 1}]}]}"#,
    )
    .unwrap();
    let out = run(&["verify-generic", "--file", sat.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["satisfiable"], serde_json::json!(true));
    std::fs::remove_file(&sat).ok();

    let bad = temp_path("bad.json");
    std::fs::write(&bad, "{").unwrap();
    let out = run(&["verify-generic", "--file", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    std::fs::remove_file(&bad).ok();
}

#[test]
fn cell_cap_guards_large_complexes() {
    let out = prismlab()
        .args(["build", "7", "4"])
        .env("PRISMLAB_MAX_CELLS", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());

    let out = prismlab()
        .args(["build", "7", "4"])
        .env("PRISMLAB_MAX_CELLS", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["build"]);
    assert_eq!(code(&out), 2);
    let out = run(&["no-such-command"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["build", "3", "2", "--dim", "2"],
        vec!["verify", "3", "2"],
        vec!["homology", "4", "3"],
        vec!["quotient", "3", "2", "--dim", "1"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}
