use std::process::{Command, Output};

use serde_json::Value;

fn linearr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linearr")).args(args).output().expect("spawn linearr")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = linearr(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn aut_of_realized_c_has_order_20() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("C.json");
    let o = linearr(&["realize", "--sign", "+", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let o = linearr(&["aut", "--input", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("order 20\n"));
    assert_eq!(json(&["aut", "--builtin", "c"])["order"], 20);
}

#[test]
fn combinatorics_profiles() {
    let c = json(&["combinatorics", "--builtin", "c"]);
    assert_eq!(c["profile"]["3"], 10);
    assert_eq!(c["profile"]["2"], 5);
    assert_eq!(c["profile"]["5"], 1);
    let m = json(&["combinatorics", "--builtin", "maclane"]);
    assert_eq!(m["profile"]["3"], 8);
    assert_eq!(m["profile"]["2"], 4);
}

#[test]
fn combinatorics_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("comb.json");
    let o = linearr(&["combinatorics", "--builtin", "maclane", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(&["aut", "--input", path.to_str().unwrap()])["order"], 48);
}

#[test]
fn moduli_prints_golden_polynomial() {
    let o = linearr(&["moduli"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("β = (2α - 1)/α"), "{text}");
    assert!(text.contains("moduli polynomial: α^2 + α - 1 = 0"), "{text}");
    let v = json(&["moduli"]);
    assert_eq!(v["moduli_coefficients"], serde_json::json!(["-1", "1", "1"]));
}

#[test]
fn monodromy_json_is_a_tuple() {
    let v = json(&["monodromy", "--sign", "-"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    let o = linearr(&["monodromy"]);
    assert!(stdout(&o).contains("wiring diagram"));
}

#[test]
fn lattice_points_carry_exact_coordinates() {
    let v = json(&["lattice", "--sign", "+"]);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 16);
    assert_eq!(points[0]["coords"].as_array().unwrap().len(), 3);
}

#[test]
fn certify_self_test_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = linearr(&["certify", "--self-test", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = linearr(&["report", "--input", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("CONJUGATOR_FOUND"));
}

#[test]
fn certify_tiny_cap_is_inconclusive() {
    let o = linearr(&["certify", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n": 3, "points": [[0, 1, 2], [0, 1]]}"#).unwrap();
    let o = linearr(&["aut", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = linearr(&["lattice", "--input", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(1));
}
