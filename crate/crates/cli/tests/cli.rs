use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn torfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn mutate_twice_is_identity() {
    let path = data("a3-frozen.json");
    let once = torfold(&["mutate", "--quiver", path.to_str().unwrap(), "--seq", "2,2"]);
    assert!(once.status.success());
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json(&once), original);
}

#[test]
fn orbit_mutate_reports_witness() {
    let p = data("cyclic3-periodic.json");
    let ok = torfold(&["orbit-mutate", "--periodic", p.to_str().unwrap(), "--seq", "0"]);
    assert_eq!(ok.status.code(), Some(0));
    let stuck = torfold(&["orbit-mutate", "--periodic", p.to_str().unwrap(), "--seq", "0,1"]);
    assert_eq!(stuck.status.code(), Some(1));
    let report = json(&stuck);
    assert_eq!(report["witness"], serde_json::json!([0]));
    assert_eq!(report["violations"][0]["sites"], serde_json::json!([1, 2]));
}

#[test]
fn fold_and_cluster() {
    let g = data("gamma-infinity-2.json");
    let folded = torfold(&["fold", "--periodic", g.to_str().unwrap()]);
    assert!(folded.status.success());
    assert_eq!(json(&folded)["vertices"].as_array().unwrap().len(), 8);
    let a = torfold(&["cluster", "--periodic", g.to_str().unwrap(), "--seq", "0,1", "--fold"]);
    assert!(a.status.success());
    assert_eq!(json(&a)["history"], serde_json::json!(["0", "1"]));
    let q = data("a3-frozen.json");
    let s = torfold(&["cluster", "--quiver", q.to_str().unwrap(), "--seq", "1"]);
    assert!(s.status.success());
    assert!(json(&s)["cluster"].is_array() || json(&s)["cluster"].is_object());
}

#[test]
fn foldability_suite_on_cyclic_triangle() {
    let c = data("cyclic3.json");
    let out = torfold(&["verify", "--suite", "foldability", "--cycle", c.to_str().unwrap(), "--depth", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["passed"], Value::Bool(true));
    assert_eq!(report["checks"][0]["details"][0]["witness"], serde_json::json!([0]));
}

#[test]
fn reports_are_byte_identical_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = torfold(&[
            "verify", "--suite", "cluster-folding", "--n", "2", "--depth", "4", "--trials", "20",
            "--seed", "42", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&out.stdout).contains("suite cluster-folding passed"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn exchange_identities_list_frozen_monomials() {
    let out = torfold(&["verify", "--suite", "exchange-identities", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let first = &report["checks"][0]["details"][0];
    assert_eq!(first["status"], "verified");
    assert_eq!(first["frozen_factors"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(torfold(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(torfold(&["fold", "--periodic", "/nonexistent.json"]).status.code(), Some(2));
    let c = data("cyclic3.json");
    // An ice quiver is not a periodic quiver.
    assert_eq!(torfold(&["fold", "--periodic", c.to_str().unwrap()]).status.code(), Some(2));
    let q = data("a3-frozen.json");
    assert_eq!(torfold(&["mutate", "--quiver", q.to_str().unwrap(), "--seq", "f"]).status.code(), Some(2));
    assert_eq!(torfold(&["verify", "--suite", "involution", "--trials", "0"]).status.code(), Some(2));
}
