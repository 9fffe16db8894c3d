//! End-to-end checks of the binary: spot values, exit codes, output
//! byte-stability and JSON round-trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_parhiggs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path =
        std::env::temp_dir().join(format!("parhiggs-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn count_spot_value_json() {
    let text = stdout(&[
        "count",
        "--g",
        "2",
        "--orders",
        "2",
        "--n",
        "2",
        "--mode",
        "weight-type",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["total"], 52);
    assert_eq!(doc["enumeration_agrees"], true);
    assert_eq!(doc["families"]["uv"], 30);
    assert_eq!(doc["families"]["dw"], 6);
    assert_eq!(doc["families"]["sqrt"], 16);
}

#[test]
fn rr_spot_value() {
    let text = stdout(&[
        "rr",
        "--g",
        "2",
        "--degree",
        "1",
        "--isotropy",
        "1",
        "--orders",
        "2",
    ]);
    assert!(text.contains("euler_characteristic: 0"));
}

#[test]
fn regime_error_exits_two() {
    let out = run(&["count", "--g", "0", "--orders", "3,3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("s0 = 0"), "{err}");
}

#[test]
fn validation_errors_exit_one() {
    // Malformed order list.
    let out = run(&["count", "--g", "2", "--orders", "2,x", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));

    // Unknown mode.
    let out = run(&[
        "count", "--g", "2", "--orders", "2", "--n", "2", "--mode", "bogus",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Unknown subcommand (usage error).
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    // Unsorted weights in a bundle file are rejected.
    let bad = write_temp(
        "bad.json",
        r#"{"rank":2,"degree":0,"points":[{"weights":[{"num":1,"den":2,"mult":1},{"num":1,"den":4,"mult":1}]}]}"#,
    );
    let out = run(&["pardeg", "--bundle", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec![
            "count", "--g", "2", "--orders", "2", "--n", "2", "--format", "json",
        ],
        vec![
            "enumerate",
            "--g",
            "1",
            "--orders",
            "2,3",
            "--n",
            "2",
            "--format",
            "csv",
        ],
        vec!["cohom", "--g", "1", "--orders", "2,3", "--format", "json"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn dual_json_round_trips_through_pardeg() {
    let bundle = write_temp(
        "bundle.json",
        r#"{"rank":2,"degree":0,"points":[{"weights":[{"num":0,"den":1,"mult":1},{"num":1,"den":2,"mult":1}]}]}"#,
    );
    let dual = stdout(&[
        "dual",
        "--bundle",
        bundle.to_str().unwrap(),
        "--format",
        "json",
    ]);

    // The emitted document is valid schema input: feed it back on stdin.
    let mut child = bin()
        .args(["pardeg", "--bundle", "-", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(dual.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // pardeg(dual) = -(0 + 1/2) = -1/2.
    assert_eq!(doc["pardeg"]["num"], -1);
    assert_eq!(doc["pardeg"]["den"], 2);
}

#[test]
fn sweep_default_grid_all_agree() {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../config/sweep.toml");
    let text = stdout(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let agrees = line.rsplit(',').next().unwrap();
        assert_eq!(agrees, "true", "{line}");
        rows += 1;
    }
    assert!(rows > 100, "expected a substantial grid, got {rows} rows");
}

#[test]
fn enumerate_length_matches_count() {
    let csv_text = stdout(&[
        "enumerate",
        "--g",
        "1",
        "--orders",
        "2,3",
        "--n",
        "2",
        "--format",
        "csv",
    ]);
    let classes = csv_text.lines().count() - 1;
    let count_doc: serde_json::Value = serde_json::from_str(&stdout(&[
        "count", "--g", "1", "--orders", "2,3", "--n", "2", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(classes as u64, count_doc["total"].as_u64().unwrap());
    assert_eq!(count_doc["total"], 22);
}
