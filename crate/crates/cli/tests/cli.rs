use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const BH_Q: &str = r#"{"Q": [[1,1,0,0,1,0],[0,1,1,1,0,0],[0,0,0,1,1,1]]}"#;
const BH_V: &str = r#"{"V": [[1,0,0,0,-1,1],[0,1,0,-1,-1,2],[0,0,1,-1,0,1]]}"#;

fn fanforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn compare_bh_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bh.json");
    fs::write(&input, BH_V).unwrap();
    let out = fanforge(&["compare", "--input", input.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rep = json(&out);
    assert_eq!(rep["sf_count"], 8);
    assert_eq!(rep["psf_count"], 6);
    let non: Vec<&Value> = rep["fans"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["projective"] == false)
        .collect();
    assert_eq!(non.len(), 2);
    for f in non {
        assert_eq!(f["nef_cone"]["rays"], serde_json::json!([[1, 1, 1]]));
    }
}

#[test]
fn output_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.txt");
    let out = fanforge(&[
        "psf",
        "--matrix",
        BH_Q,
        "--format",
        "text",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(out_path).unwrap();
    assert!(text.contains("PSF: 6 fans"));
    assert!(!text.contains("SF: 8 fans"));
}

#[test]
fn sf_without_overlap_check() {
    let out = fanforge(&[
        "sf",
        "--matrix",
        BH_Q,
        "--no-overlap-check",
        "--fiber-bound",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["sf_count"], 8);
}

#[test]
fn family_two_one() {
    let out = fanforge(&["family", "--p", "2", "--q", "1", "--fiber-bound", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["sf_count"], 8);
    assert_eq!(rep["psf_count"], 7);
    assert_eq!(rep["family"], serde_json::json!([2, 1]));
    let trivial = rep["fans"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["nef_cone"]["dim"] == 0)
        .count();
    assert_eq!(trivial, 1);
}

#[test]
fn family_rejects_non_coprime() {
    let out = fanforge(&["family", "--p", "2", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plot_is_svg() {
    let out = fanforge(&["plot", "--matrix", BH_Q]);
    assert_eq!(out.status.code(), Some(0));
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains(r#"version="1.1""#));
    assert_eq!(svg.matches(r#"class="chamber""#).count(), 6);
}

#[test]
fn plot_rank_two_fails() {
    let out = fanforge(&["plot", "--matrix", r#"{"V": [[1,0,-1,0],[0,1,0,-1]]}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_reports_axiom_violation() {
    let ok = fanforge(&["validate", "--matrix", BH_V]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["valid"], true);
    let bad = fanforge(&["validate", "--matrix", r#"{"V": [[1,0],[0,1]]}"#]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["valid"], false);
}

#[test]
fn conjecture_reports_counts() {
    let out = fanforge(&["conjecture", "--matrix", BH_Q]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["fans"], 8);
    assert_eq!(rep["counterexamples"], serde_json::json!([]));
}

#[test]
fn malformed_input_is_an_error() {
    assert_eq!(fanforge(&["sf", "--matrix", "{"]).status.code(), Some(2));
    assert_eq!(fanforge(&["sf"]).status.code(), Some(2));
    let both = r#"{"V": [[1,-1]], "Q": [[1,1]]}"#;
    assert_eq!(fanforge(&["sf", "--matrix", both]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_across_threads() {
    let one = fanforge(&["compare", "--matrix", BH_Q, "--threads", "1"]);
    let four = fanforge(&["compare", "--matrix", BH_Q, "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(
        one.stdout,
        fanforge(&["compare", "--matrix", BH_Q, "--threads", "1"]).stdout
    );
}
