//! End-to-end tests of the binary: command output, exit codes, and the
//! table cache.

use std::path::Path;
use std::process::{Command, Output};

fn shapeinv(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shapeinv"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .env_remove("SHAPEINV_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn rs_reports_statistics_and_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let output = shapeinv(dir.path(), &["rs", "2", "1", "3", "6", "5", "4", "8", "7"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("shape: (4,3,1)"));
    assert!(text.contains("inversions: 5"));
    assert!(text.contains("excess: 0"));
    assert!(text.contains("layered_blocks: (2,1,3,2)"));

    let json_out = shapeinv(dir.path(), &["rs", "3,1,2", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&json_out)).unwrap();
    assert_eq!(value["shape"], serde_json::json!([2, 1]));
    assert_eq!(value["inversions"], 2);
    assert_eq!(value["excess"], 1);
    assert_eq!(value["layered_blocks"], serde_json::Value::Null);
}

#[test]
fn minimal_lists_layered_permutations() {
    let dir = tempfile::tempdir().unwrap();
    let output = shapeinv(dir.path(), &["minimal", "--shape", "2,2,1"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("2 layered permutation(s)"));
    assert!(text.contains("blocks (2,3): 2 1 5 4 3"));
    assert!(text.contains("blocks (3,2): 3 2 1 5 4"));
}

#[test]
fn jumps_enumerates_five_at_excess_two() {
    let dir = tempfile::tempdir().unwrap();
    let output = shapeinv(dir.path(), &["jumps", "--shape", "2^6", "--delta", "2"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("excess 2: 5 jump partition(s)"));
    assert_eq!(text.matches("inner (").count(), 5);
}

#[test]
fn apply_reproduces_combined_action() {
    let dir = tempfile::tempdir().unwrap();
    let output = shapeinv(
        dir.path(),
        &[
            "apply",
            "--composition",
            "3,4,3",
            "--inner",
            ";1,1",
            "--outer",
            "2;",
        ],
    );
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("result: 5 2 1 7 6 10 4 3 9 8"));
    assert!(text.contains("inversions: 12 -> 16"));
}

#[test]
fn decompose_round_trips_and_guards() {
    let dir = tempfile::tempdir().unwrap();
    let output = shapeinv(
        dir.path(),
        &["decompose", "6", "5", "4", "3", "2", "12", "1", "11", "10", "9", "8", "7"],
    );
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("layered: 6 5 4 3 2 1 12 11 10 9 8 7"));
    assert!(text.contains("jump: inner ((1)) outer (())"));

    // Out of regime: distinct exit code and an explicit message.
    let refused = shapeinv(dir.path(), &["decompose", "3", "1", "2"]);
    assert_eq!(refused.status.code(), Some(3));
    assert!(stderr_of(&refused).contains("no decomposition theorem applies"));

    let malformed = shapeinv(dir.path(), &["decompose", "3", "q", "2"]);
    assert_eq!(malformed.status.code(), Some(2));
    assert!(stderr_of(&malformed).contains("'q'"));
}

#[test]
fn verify_small_n_is_clean_and_caches() {
    let dir = tempfile::tempdir().unwrap();
    let first = shapeinv(dir.path(), &["verify", "--n", "5", "--suite", "all"]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout_of(&first);
    assert!(text.contains("suite minimal at n = 5"));
    assert!(text.contains("suite two_column at n = 5"));
    assert!(text.contains("suite conjecture at n = 5"));
    assert!(text.contains("suite structure at n = 5"));
    assert!(!text.contains("FAIL"));
    assert!(dir.path().join("sweep_n5.json").exists());
    assert!(dir.path().join("report_minimal_n5.json").exists());
    assert!(dir.path().join("report_structure_n5.json").exists());

    // Second run reuses the cached table and prints identical output.
    let second = shapeinv(dir.path(), &["verify", "--n", "5", "--suite", "all"]);
    assert_eq!(second.status.code(), Some(0));
    assert!(stderr_of(&second).contains("using cached table"));
    assert_eq!(stdout_of(&second), text);
}

#[test]
fn sweep_guard_requires_flag() {
    let dir = tempfile::tempdir().unwrap();
    let refused = shapeinv(dir.path(), &["verify", "--n", "12"]);
    assert_eq!(refused.status.code(), Some(3));
    assert!(stderr_of(&refused).contains("--allow-large-n"));

    let above_ceiling = shapeinv(dir.path(), &["verify", "--n", "13", "--allow-large-n"]);
    assert_eq!(above_ceiling.status.code(), Some(3));
}

#[test]
fn sweep_exports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv = shapeinv(dir.path(), &["sweep", "--n", "5", "--format", "csv"]);
    assert!(csv.status.success());
    let body = stdout_of(&csv);
    assert!(body.starts_with("shape,delta,count\n"));
    assert!(body.contains("2.2.1,"));

    let again = shapeinv(dir.path(), &["sweep", "--n", "5", "--format", "csv"]);
    assert_eq!(stdout_of(&again), body);

    let filtered = shapeinv(
        dir.path(),
        &["sweep", "--n", "5", "--format", "csv", "--delta-max", "0"],
    );
    let filtered_body = stdout_of(&filtered);
    assert!(filtered_body.lines().count() < body.lines().count());
    assert!(filtered_body.lines().skip(1).all(|l| l.contains(",0,")));
}
