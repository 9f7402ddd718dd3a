use std::process::{Command, Output};

use polytope_core::poset::PosetJson;

fn polytope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polytope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_json_round_trips_through_verify() {
    let o = polytope(&["build", "I^x3"]);
    assert!(o.status.success());
    let lattice: PosetJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(lattice.rank, 3);
    assert_eq!(lattice.elements.len(), 28);
    assert_eq!(lattice.covers.len(), 8 + 24 + 24 + 6);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.json");
    std::fs::write(&path, stdout(&o)).unwrap();
    let v = polytope(&["verify", "--json", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(report["is_polytope"], true);
}

#[test]
fn verify_rejects_a_broken_file() {
    let o = polytope(&["build", "IxI"]);
    let mut lattice: PosetJson = serde_json::from_str(&stdout(&o)).unwrap();
    lattice.covers.pop();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, serde_json::to_string(&lattice).unwrap()).unwrap();
    let v = polytope(&["verify", "--json", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(report["is_polytope"], false);
    assert!(!report["failures"].as_array().unwrap().is_empty());
}

#[test]
fn build_writes_dot_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.dot");
    let o = polytope(&["build", "I*pt", "--out", "dot", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph polytope"));
    assert_eq!(dot.matches("->").count(), 12);
}

#[test]
fn aut_methods_agree() {
    for method in ["formula", "brute", "generators"] {
        let o = polytope(&["aut", "(I*pt)xI", "--method", method]);
        assert!(o.status.success(), "{method}");
        assert!(stdout(&o).lines().any(|l| l == "order: 12"), "{method}: {}", stdout(&o));
    }
    let o = polytope(&["--sequential", "aut", "I^x3", "--method", "brute"]);
    assert!(stdout(&o).contains("order: 48"));
}

#[test]
fn family_json_lists_every_node() {
    let o = polytope(&["family", "--steps", "3", "--json"]);
    assert!(o.status.success());
    let nodes: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(nodes.len(), 8);
    let orders: Vec<&str> = nodes.iter().map(|n| n["order"].as_str().unwrap()).collect();
    assert!(orders.contains(&"384"));
    assert!(orders.contains(&"120"));
    let text = polytope(&["family", "--steps", "2"]);
    assert_eq!(stdout(&text).lines().count(), 4);
}

#[test]
fn decompose_prints_the_cofactor() {
    let o = polytope(&["decompose", "(I*pt)xI", "--as", "prism"]);
    assert!(o.status.success());
    let base: PosetJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(base.elements.len(), 8);
    let o = polytope(&["decompose", "(I*pt)xI", "--as", "pyramid"]);
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn exit_codes() {
    assert_eq!(polytope(&["build", "I**pt"]).status.code(), Some(2));
    assert_eq!(polytope(&["build", "I*ptxI"]).status.code(), Some(2));
    assert_eq!(polytope(&["aut", "IxI*pt", "--method", "formula"]).status.code(), Some(2));
    assert_eq!(polytope(&["aut", "pt*pt*pt", "--method", "formula"]).status.code(), Some(3));
    assert_eq!(polytope(&["aut", "ptxI", "--method", "generators"]).status.code(), Some(3));
    assert_eq!(polytope(&["--max-elements", "20", "build", "I^x3"]).status.code(), Some(4));
    assert_eq!(polytope(&["verify", "--json", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(polytope(&["family"]).status.code(), Some(2));
}
