//! End-to-end tests of the binary: argument handling, exit codes, JSON
//! shapes, and stdin/stdout discipline.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ellstab"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn ellstab");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("ellstab-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const CH: &str = r#"{"geometry":{"kind":"threefold","d":1},"matrix":[[1,2,3],[4,5,6]]}"#;

#[test]
fn transform_prints_the_swapped_negated_matrix() {
    let path = write_temp("ch.json", CH);
    let out = bin().arg("transform").arg(&path).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("(4,5,6;-1,-2,-3)"), "{stdout}");
}

#[test]
fn transform_accepts_bare_matrices_with_geometry_flags() {
    let out = run_with_stdin(&["transform", "--d", "2", "-"], "[[1,2,3],[4,5,6]]");
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("(4,5,6;-1,-2,-3)"), "{stdout}");
}

#[test]
fn transform_json_round_trips_through_the_library_format() {
    let path = write_temp("ch2.json", CH);
    let out = bin()
        .args(["transform", "--inverse", "--json"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["transform"]["matrix"][0][0], 4);
    assert_eq!(doc["transform"]["matrix"][1][0], -1);
    assert_eq!(doc["inverse"]["matrix"][1][0], 1);
}

#[test]
fn malformed_json_exits_2() {
    let path = write_temp("bad.json", "{not json");
    let out = bin().arg("transform").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // only struck stderr, never stdout
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn slope_prints_exact_rationals() {
    let out = run_with_stdin(
        &["slope", "--alpha", "1", "--beta", "1", "-"],
        r#"{"geometry":{"kind":"threefold","d":1},"matrix":[[1,1,0],[1,0,0]]}"#,
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("mu_omega     = 6"), "{stdout}");
    let out = run_with_stdin(
        &["slope", "--json", "-"],
        r#"{"geometry":{"kind":"threefold","d":1},"matrix":[[0,0,0],[2,3,7]]}"#,
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["mu_omega"], "+inf");
    assert_eq!(doc["mu_lower_star"], "3/2");
}

#[test]
fn slope_rejects_non_ample_polarisations_with_exit_3() {
    let out = run_with_stdin(
        &["slope", "--alpha", "0", "--beta", "1", "-"],
        "[[1,0,0],[0,0,0]]",
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_reports_verdict_witness_and_threshold() {
    let sub = write_temp("sub.json", "[[0,0,0],[1,2,0]]");
    let amb = write_temp("amb.json", "[[0,0,0],[2,3,1]]");
    let out = bin()
        .args(["compare", "--dim", "2", "--json"])
        .arg(&sub)
        .arg(&amb)
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["outcome"], "destabilizes");
    assert_eq!(doc["witness"], "n_cubed");
    assert!(doc["threshold"].is_string());

    // rank-zero input to the 3d comparison violates its precondition
    let out = bin()
        .args(["compare", "--dim", "3"])
        .arg(&sub)
        .arg(&amb)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_surface_case() {
    let sub = write_temp("ssub.json", "[[0,1],[1,2]]");
    let amb = write_temp("samb.json", "[[0,1],[2,3]]");
    let out = bin()
        .args([
            "compare",
            "--geometry",
            "surface",
            "--surface-case",
            "one-dimensional",
            "--json",
        ])
        .arg(&sub)
        .arg(&amb)
        .output()
        .unwrap();
    assert!(out.status.success(), "{:?}", out);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["outcome"], "destabilizes");
    assert_eq!(doc["witness"], "euler_vs_fiber");
}

#[test]
fn classify_prints_the_case_table() {
    let out = run_with_stdin(&["classify", "-"], "[[0,0,0],[-1,0,0]]");
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("case 3: FAIL"), "{stdout}");
    assert!(stdout.contains("not a sheaf class"), "{stdout}");
}

#[test]
fn enumerate_subs_streams_json_lines() {
    let out = run_with_stdin(&["enumerate-subs", "--bound", "1", "-"], "[[0,0,0],[1,0,0]]");
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 10);
    for line in &lines {
        let doc: Value = serde_json::from_str(line).unwrap();
        assert!(doc["matrix"].is_array());
    }
}

#[test]
fn hn_prints_chain_and_slopes() {
    let fixture = r#"{
        "elements": [
            {"id": "0", "C0": 0, "C1": 0},
            {"id": "A", "C0": 1, "C1": 5},
            {"id": "E", "C0": 2, "C1": 8}
        ],
        "leq": [["0", "A"], ["A", "E"]]
    }"#;
    let out = run_with_stdin(&["hn", "-"], fixture);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("chain:  0 <= 0 <= A <= E"), "{stdout}");
    assert!(stdout.contains("slopes: 5 > 3"), "{stdout}");

    // invalid fixture: C0 drops along the chain
    let bad = r#"{
        "elements": [
            {"id": "0", "C0": 0, "C1": 0},
            {"id": "A", "C0": 2, "C1": 0},
            {"id": "E", "C0": 1, "C1": 0}
        ],
        "leq": [["0", "A"], ["A", "E"]]
    }"#;
    let out = run_with_stdin(&["hn", "-"], bad);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_involution_matches_the_documented_case_count() {
    let out = bin()
        .args(["verify", "--suite", "involution", "--bound", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["failures"], 0);
    assert_eq!(doc["branches"]["threefold-box"], 15625);
    assert_eq!(doc["branches"]["surface-box"], 625);
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = bin()
        .args(["verify", "--suite", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_sequential_and_parallel_agree() {
    let seq = bin()
        .args(["verify", "--suite", "slopes", "--bound", "1", "--threads", "1"])
        .output()
        .unwrap();
    let par = bin()
        .args(["verify", "--suite", "slopes", "--bound", "1", "--threads", "4"])
        .output()
        .unwrap();
    assert!(seq.status.success() && par.status.success());
    let a: Value = serde_json::from_slice(&seq.stdout).unwrap();
    let b: Value = serde_json::from_slice(&par.stdout).unwrap();
    assert_eq!(a["cases"], b["cases"]);
    assert_eq!(a["failures"], b["failures"]);
}

#[test]
fn out_flag_writes_the_payload_to_a_file() {
    let target = std::env::temp_dir().join(format!("ellstab-out-{}.txt", std::process::id()));
    let path = write_temp("ch3.json", CH);
    let out = bin()
        .args(["transform", "--out"])
        .arg(&target)
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.contains("(4,5,6;-1,-2,-3)"));
    std::fs::remove_file(&target).ok();
}
