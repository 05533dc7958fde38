//! End-to-end tests of the `ybx` binary: golden outputs against the
//! library, the JSON envelope, exit codes, and file output.

use std::process::{Command, Output};

use ybx_core::smatrix::s_element;
use ybx_core::threed::r_elem;
use ybx_core::{EpsSignature, StateVector};

fn ybx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybx")).args(args).output().expect("binary runs")
}

fn parse_stdout(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

#[test]
fn element_r_matches_library() {
    let out = ybx(&["element", "r", "--upper", "2,2,1", "--lower", "3,1,2", "-f", "json"]);
    assert!(out.status.success());
    let doc = parse_stdout(&out);
    assert_eq!(doc["schema"], "ybx/1");
    assert_eq!(doc["command"], "element.r");
    assert_eq!(doc["value"], r_elem(2, 2, 1, 3, 1, 2).to_string());
}

#[test]
fn element_r_vanishes_off_conservation() {
    let out = ybx(&["element", "r", "--upper", "1,0,0", "--lower", "0,0,0", "-f", "json"]);
    assert!(out.status.success());
    assert_eq!(parse_stdout(&out)["value"], "0");
}

#[test]
fn element_s_matches_library() {
    let out = ybx(&[
        "element", "s", "--eps", "101", "--a", "0,4,0", "--b", "1,0,1", "--i", "0,3,1",
        "--j", "1,1,0", "-f", "json",
    ]);
    assert!(out.status.success());
    let eps = EpsSignature::parse("101").unwrap();
    let expected = s_element(
        &eps,
        &StateVector::parse("040").unwrap(),
        &StateVector::parse("101").unwrap(),
        &StateVector::parse("031").unwrap(),
        &StateVector::parse("110").unwrap(),
    )
    .unwrap();
    assert_eq!(parse_stdout(&out)["value"], expected.to_string());
}

#[test]
fn verify_passes_on_trivial_input() {
    let out = ybx(&["verify", "te-rrrr", "--input", "0,0,0,0,0,0", "-f", "json"]);
    assert!(out.status.success());
    let doc = parse_stdout(&out);
    assert_eq!(doc["pass"], true);
    assert!(doc["identity"].is_string());
}

#[test]
fn env_var_selects_json() {
    let out = Command::new(env!("CARGO_BIN_EXE_ybx"))
        .args(["verify", "ybe-comb", "--eps", "010", "--levels", "2,1,1"])
        .env("YBX_OUTPUT", "json")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let doc = parse_stdout(&out);
    assert_eq!(doc["schema"], "ybx/1");
    assert_eq!(doc["pass"], true);
}

#[test]
fn emitted_json_round_trips() {
    let out = ybx(&["verify", "inverse", "--eps", "10", "--l", "2", "--m", "1", "-f", "json"]);
    assert!(out.status.success());
    let doc = parse_stdout(&out);
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, reparsed);
}

#[test]
fn usage_errors_exit_two() {
    let out = ybx(&["element", "r", "--upper", "nope", "--lower", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ybx(&["element", "r", "--upper", "1,2", "--lower", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_errors_exit_three() {
    // Slot 0 of the signature is fermionic; occupation 2 is inadmissible.
    let out = ybx(&[
        "element", "s", "--eps", "101", "--a", "2,0,0", "--b", "0,0,0", "--i", "1,0,0",
        "--j", "1,0,0",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn table_out_writes_parseable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("block.json");
    let out = ybx(&[
        "table",
        "s-block",
        "--eps",
        "11",
        "--l",
        "0",
        "--m",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], "ybx/1");
    assert_eq!(doc["block"]["entries"].as_array().unwrap().len(), 1);
    // The single entry is the geometric series 1/(1 - z).
    assert_eq!(doc["block"]["entries"][0]["value"][0]["d"], 0);
    assert_eq!(doc["block"]["entries"][0]["value"][0]["k"], 0);
}

#[test]
fn verify_replays_worked_map_example() {
    let out = ybx(&[
        "verify",
        "te-comb",
        "--family",
        "rrrr",
        "--input",
        "2,6,1,4,3,5",
        "-f",
        "json",
    ]);
    assert!(out.status.success());
    let doc = parse_stdout(&out);
    assert_eq!(doc["pass"], true);
    let lhs = doc["trace"]["lhs"].as_array().unwrap();
    assert_eq!(lhs.last().unwrap(), &serde_json::json!([4, 3, 2, 3, 6, 1]));
}
