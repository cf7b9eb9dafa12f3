//! End-to-end runs of the compiled binary: output contracts and exit codes
//! (0 success/PASS, 1 check or verify failure, 2 usage or budget error).

use std::path::PathBuf;
use std::process::{Command, Output};

fn baxter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_baxter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("baxter-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

#[test]
fn check_baxter_matrix_exits_zero() {
    let file = temp_file("identity", "10\n01\n");
    let out = baxter(&["check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "BAXTER\n");
}

#[test]
fn check_violations_exit_one_with_full_list() {
    let file = temp_file("ones", "11\n11\n");
    let out = baxter(&["check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(
        stdout,
        "violation: clockwise pinwheel (1,1)\nviolation: counterclockwise pinwheel (1,1)\n"
    );

    let zero = temp_file("zero-row", "00\n11\n");
    let out = baxter(&["check", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "violation: zero row 1\n"
    );
}

#[test]
fn check_json_report() {
    let file = temp_file("json", "11\n11\n");
    let out = baxter(&["check", file.to_str().unwrap(), "--report", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid JSON report");
    assert_eq!(value["baxter"], false);
    assert_eq!(value["violations"][0]["kind"], "unsatisfied_pinwheel");
}

#[test]
fn check_parse_error_exits_two() {
    let file = temp_file("foreign", "1 0\n");
    let out = baxter(&["check", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn count_and_poly_match_published_values() {
    let out = baxter(&["count", "-r", "3", "-k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "69\n");

    let out = baxter(&["count", "-r", "1", "-k", "9"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1\n");

    let out = baxter(&["poly", "-r", "2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "k^2 + 3k - 4 (k >= 2)\n");
}

#[test]
fn budget_errors_exit_two() {
    let out = baxter(&["count", "-r", "5", "-k", "6", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));

    let out = baxter(&["automaton", "-r", "9", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));

    let out = baxter(&["count", "-r", "5", "-k", "6", "--method", "brute", "--brute-budget", "30"]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
}

#[test]
fn usage_error_exits_two() {
    let out = baxter(&["count", "-r", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "-r", "2", "--max-k", "4", "--report", "json"];
    let first = baxter(&args);
    assert_eq!(first.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(reports.as_array().unwrap().len() >= 10);
    let second = baxter(&args);
    assert_eq!(first.stdout, second.stdout, "byte-identical reruns");
}

#[test]
fn automaton_file_output_round_trips() {
    let path = std::env::temp_dir().join(format!("baxter-cli-{}-a2.json", std::process::id()));
    let out = baxter(&[
        "automaton",
        "-r",
        "2",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["rows"], 2);
    assert_eq!(value["states"].as_array().unwrap().len(), 8);
    assert_eq!(value["edges"].as_array().unwrap().len(), 17);
    assert_eq!(value["start"], 0);
}

#[test]
fn check_reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_baxter"))
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"# comment\n10\n01\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "BAXTER\n");
}
