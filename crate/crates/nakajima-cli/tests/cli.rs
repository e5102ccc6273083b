use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const A2: &str = r#"{"type":"A","rank":2,"arrows":[[1,2]]}"#;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nakajima")).current_dir(dir).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        ("q.json", A2),
        ("tau.json", r#"{"tau":1,"sigma_shift":0}"#),
        ("cluster.json", r#"{"tau":-1,"sigma_shift":1}"#),
        ("identity.json", r#"{"tau":0,"sigma_shift":0}"#),
        ("all.json", r#""all""#),
        ("s1.json", r#"{"dims":{"(1',-1)":1}}"#),
        ("s12.json", r#"{"dims":{"(1',-1)":1,"(2',-1)":1}}"#),
        ("big.json", r#"{"dims":{"(1',-1)":14}}"#),
        ("e10.json", "[1,0]"),
        ("e70.json", "[7,0]"),
        ("v11.json", "[1,1]"),
    ];
    for (name, text) in files {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn build_writes_three_categories() {
    let dir = setup();
    let out = run(dir.path(), &["build", "--quiver", "q.json", "--auto", "tau.json", "--config", "all.json", "--dir", "cats", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["seed"], 7);
    assert_eq!(r["mesh_sign_convention"], "all-plus");
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["result"]["admissibility"]["report"]["admissible"], true);
    for name in ["R", "S", "P"] {
        assert!(dir.path().join(format!("cats/{name}.json")).exists());
        assert!(dir.path().join(format!("cats/{name}.dot")).exists());
    }
    let p: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("cats/P.json")).unwrap()).unwrap();
    assert_eq!(p["objects"].as_array().unwrap().len(), 2);
    let window = std::fs::read_to_string(dir.path().join("cats/window.dot")).unwrap();
    assert!(window.contains("shape=box"));
}

#[test]
fn finite_order_is_an_input_error() {
    let dir = setup();
    let out = run(dir.path(), &["build", "--quiver", "q.json", "--auto", "identity.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("finite order"));
}

#[test]
fn cluster_s_quiver_has_five_vertices() {
    let dir = setup();
    let out = run(dir.path(), &["dot", "--quiver", "q.json", "--auto", "cluster.json", "--target", "S"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("shape=")).count(), 5);
    assert!(dot.starts_with("digraph"));
}

#[test]
fn check_lists_and_runs_suites() {
    let dir = setup();
    let out = run(dir.path(), &["check"]);
    assert!(out.status.success());
    assert_eq!(report(&out)["result"]["suites"].as_array().unwrap().len(), 5);
    let out = run(dir.path(), &["check", "presentations"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(report(&out)["result"]["failed"], 0);
    assert_eq!(run(dir.path(), &["check", "nonsense"]).status.code(), Some(2));
}

#[test]
fn kan_of_a_simple() {
    let dir = setup();
    let out = run(dir.path(), &["kan", "--quiver", "q.json", "--module", "s1.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = &report(&out)["result"];
    assert_eq!(r["ck_is_shifted_kk"], true);
    assert_eq!(r["kk_projectives"], r["kk_predicted"]);
    assert_eq!(r["k_lr"]["(1',-1)"], 1);
}

#[test]
fn fiber_and_desing_over_f2() {
    let dir = setup();
    let out = run(dir.path(), &["fiber", "--quiver", "q.json", "--module", "s1.json", "--v", "v11.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["field"], "F2");
    assert_eq!(r["result"]["points"], r["result"]["direct_count"]);
    let out = run(dir.path(), &["desing", "--quiver", "q.json", "--module", "s12.json", "--e", "e10.json", "--field", "F2", "--out", "report.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(r["result"]["passed"], true);
    assert_eq!(r["result"]["points"], 1);
}

#[test]
fn exit_codes() {
    let dir = setup();
    // point counts need a finite field
    let out = run(dir.path(), &["desing", "--quiver", "q.json", "--module", "s12.json", "--e", "e10.json", "--field", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(dir.path(), &["kan", "--quiver", "missing.json", "--module", "s1.json"]).status.code(), Some(2));
    // Gr(7, 14) over F_2 is far beyond the size guard
    let out = run(dir.path(), &["grass", "count", "--quiver", "q.json", "--ambient", "big.json", "--dim", "e70.json"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
