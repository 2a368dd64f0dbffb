use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_darboux7r")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn factor_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, extra) in [("FI", vec![]), ("FII", vec![]), ("FIII", vec!["--x", "1/3", "--y", "-2/7"]), ("FIV", vec![])]
    {
        let path = dir.path().join(format!("{kind}.json"));
        let mut args = vec!["factor", "--type", kind, "--a", "3/2", "--b", "-1", "--c", "2/5"];
        args.extend(&extra);
        args.extend(["--out", path.to_str().unwrap()]);
        let o = run(&args);
        assert!(o.status.success(), "{kind}: {}", String::from_utf8_lossy(&o.stderr));
        let o = run(&["verify", "--from-file", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    }
}

#[test]
fn tampered_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fi.json");
    run(&["factor", "--type", "FI", "--a", "3/2", "--b", "-1", "--c", "2/5", "--out", path.to_str().unwrap()]);
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    v["factors"][1][0][5] = Value::String("7/3".into());
    fs::write(&path, v.to_string()).unwrap();
    let o = run(&["verify", "--from-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL FI"));
}

#[test]
fn vertical_case_is_a_usage_error() {
    let o = run(&["factor", "--type", "FI", "--a", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a must be nonzero"));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(run(&["factor", "--type", "FV", "--a", "1"]).status.code(), Some(2));
    assert_eq!(run(&["factor", "--type", "FI", "--a", "x/y"]).status.code(), Some(2));
    assert_eq!(run(&["factor", "--type", "FI"]).status.code(), Some(2));
    assert_eq!(run(&["mobility", "--type", "FIV", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn fiv_factor_is_an_array_of_two() {
    let o = run(&["factor", "--type", "FIV"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let labels: Vec<&str> = v.as_array().unwrap().iter().map(|f| f["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["FI", "FIV"]);
    assert_eq!(v[1]["identical_adjacent"], serde_json::json!([[4, 5]]));
}

#[test]
fn fiv_mobility_is_two() {
    let o = run(&["mobility", "--type", "FIV", "--samples", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let dofs: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(dofs.len(), 10);
    assert!(dofs.iter().all(|d| *d == "2"), "{dofs:?}");
}

#[test]
fn linkage_json() {
    let o = run(&["linkage", "--type", "FI+FII", "--a", "2", "--b", "1", "--c", "-1/2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["joint_count"], 7);
    assert_eq!(v["parallel_groups"], serde_json::json!([[1, 2], [3, 4], [5, 6, 7]]));
    assert_eq!(v["closure_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn simulate_csv_shape() {
    let o = run(&["simulate", "--type", "FI+FIII", "--a", "3/2", "--b", "-1", "--c", "2/5", "--samples", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.len() == 1 + 7 + 8));
    let residual = String::from_utf8_lossy(&o.stderr);
    assert!(residual.contains("closure residual"));
}

#[test]
fn trace_reports_ellipses_and_circles() {
    let o = run(&["trace", "--a", "1", "--b", "2", "--random-points", "3", "--seed", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["conic_class"] == "Ellipse"));
    let o = run(&["trace", "--a", "1", "--b", "2", "--point", "0.3,-1.7,0.9", "--motion", "translation"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["conic_class"], "Circle");
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fiv.svg");
    let o = run(&["plot", "--type", "FIV", "--samples", "4", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<g id=").count(), 4);
    // k-parallel axes of FIV are drawn as dots: three per frame
    assert_eq!(svg.matches("<circle").count(), 12);
}
