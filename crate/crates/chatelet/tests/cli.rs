//! End-to-end checks of the batch binary: spec files in, JSON reports out,
//! meaningful exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn write_spec(dir: &std::path::Path, name: &str, json: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chatelet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chatelet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const DESK: &str = r#"{ "a": -1, "factors": [[1, 0, 2], [1, 0, 3]] }"#;

#[test]
fn invariants_command_reports_expected_values() {
    let dir = tmp_dir();
    let spec = write_spec(&dir, "desk.json", DESK);
    let out = run(&["invariants", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "ok");
    assert_eq!(report["result"]["alpha"], "1/2");
    assert_eq!(report["result"]["beta"], "2");
    assert_eq!(report["result"]["picard_ranks"]["geometric"], 6);
    assert_eq!(report["result"]["picard_ranks"]["quadratic"], 4);
    assert_eq!(report["result"]["picard_ranks"]["rational"], 2);
    assert_eq!(report["result"]["tate_h1_divisors"][0], "2");
}

#[test]
fn validate_rejects_non_squarefree_a() {
    let dir = tmp_dir();
    let spec = write_spec(
        &dir,
        "bad_a.json",
        r#"{ "a": 4, "factors": [[1, 0, 2], [1, 0, 3]] }"#,
    );
    let out = run(&["validate", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn torsor_classes_for_desk_surface() {
    let dir = tmp_dir();
    let spec = write_spec(&dir, "desk2.json", DESK);
    let out = run(&["torsor-classes", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let sigma = report["result"]["sigma"].as_array().unwrap();
    assert_eq!(sigma.len(), 2);
    assert_eq!(report["result"]["m"].as_array().unwrap().len(), 1);
}

#[test]
fn partition_and_count_agree() {
    let dir = tmp_dir();
    let spec = write_spec(&dir, "desk3.json", DESK);
    let part = run(&["partition-check", spec.to_str().unwrap(), "--bound", "20"]);
    assert!(part.status.success());
    let part: serde_json::Value = serde_json::from_slice(&part.stdout).unwrap();
    assert_eq!(part["result"]["passed"], true);

    let count = run(&["count", spec.to_str().unwrap(), "--bound", "20"]);
    assert!(count.status.success());
    let count: serde_json::Value = serde_json::from_slice(&count.stdout).unwrap();
    assert_eq!(
        part["result"]["points"].as_u64().unwrap(),
        count["result"]["total"].as_u64().unwrap()
    );
}

#[test]
fn reports_are_deterministic_and_written_to_file() {
    let dir = tmp_dir();
    let spec = write_spec(&dir, "desk4.json", DESK);
    let out_path = dir.join("report.json");
    let first = run(&[
        "density",
        spec.to_str().unwrap(),
        "--p",
        "3",
        "--levels",
        "2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(first.status.success());
    let second = run(&[
        "density",
        spec.to_str().unwrap(),
        "--p",
        "3",
        "--levels",
        "2",
    ]);
    assert_eq!(first.stdout, second.stdout);
    let written = std::fs::read_to_string(&out_path).unwrap();
    let report: serde_json::Value = serde_json::from_str(&written).unwrap();
    // report round-trips and the rationals are num/den strings
    let value = report["result"]["primes"][0]["per_class"][0]["levels"][0]["value"]
        .as_str()
        .unwrap();
    assert!(value.contains('/'));
}

#[test]
fn density_defaults_come_from_the_spec_file() {
    let dir = tmp_dir();
    let spec = write_spec(
        &dir,
        "desk6.json",
        r#"{ "a": -1, "factors": [[1, 0, 2], [1, 0, 3]],
             "density_primes": [3, 7], "truncation_levels": 1 }"#,
    );
    let out = run(&["density", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let runs = report["result"]["primes"].as_array().unwrap();
    assert_eq!(runs.len(), 2);
    assert_eq!(runs[0]["p"], 3);
    assert_eq!(runs[1]["p"], 7);
    assert_eq!(report["result"]["levels"], 1);
}

#[test]
fn jobs_flag_and_env_are_accepted() {
    let dir = tmp_dir();
    let spec = write_spec(&dir, "desk7.json", DESK);
    let out = run(&[
        "count",
        spec.to_str().unwrap(),
        "--bound",
        "10",
        "--jobs",
        "1",
    ]);
    assert!(out.status.success());
    let with_env = Command::new(env!("CARGO_BIN_EXE_chatelet"))
        .args(["count", spec.to_str().unwrap(), "--bound", "10"])
        .env("TORSOR_JOBS", "2")
        .output()
        .expect("binary runs");
    assert!(with_env.status.success());
    let a: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&with_env.stdout).unwrap();
    assert_eq!(a["result"]["total"], b["result"]["total"]);
}

#[test]
fn sum_ra_command() {
    let dir = tmp_dir();
    let spec = write_spec(&dir, "desk5.json", DESK);
    let out = run(&["sum-ra", spec.to_str().unwrap(), "--x", "5"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let sum: i64 = report["result"]["sum"].as_str().unwrap().parse().unwrap();
    assert!(sum > 0);
}

#[test]
fn field_info_command() {
    let dir = tmp_dir();
    let spec = write_spec(
        &dir,
        "real.json",
        r#"{ "a": 5, "factors": [[1, 0, -2], [1, 0, -3]] }"#,
    );
    let out = run(&["field-info", spec.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let unit = &report["result"]["fundamental_unit"];
    assert_eq!(unit["x"], "1");
    assert_eq!(unit["y"], "1");
    assert_eq!(unit["half"], true);
    assert_eq!(report["result"]["class_number"], 1);
}
