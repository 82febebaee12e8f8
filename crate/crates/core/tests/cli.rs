mod common;

use std::path::Path;
use std::process::{Command, Output};

use rainbow_forge::graph::{validate_matching, Edge};
use rainbow_forge::io::Instance;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow-forge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let o = run(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn sharpness_four_shape() {
    let o = run(&["gen", "sharpness", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let inst = Instance::parse(&stdout(&o)).unwrap();
    assert_eq!(inst.labels.len(), 8);
    assert_eq!(inst.family.len(), 7);
    assert!(inst.family.iter().all(|c| c.len() == 4 && validate_matching(c)));
    assert!(!common::rainbow_matching_exists(&inst.family, 4));
}

#[test]
fn odd_sharpness_is_an_error() {
    let o = run(&["gen", "sharpness", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("even"));
}

#[test]
fn badge_from_host_string() {
    let o = run(&["gen", "badge", "--host", "xy:3,yz:2"]);
    assert!(o.status.success());
    let inst = Instance::parse(&stdout(&o)).unwrap();
    // three host vertices plus 2·3 + 2·2 interior vertices; 2·5 paths
    assert_eq!(inst.labels.len(), 13);
    assert_eq!(inst.family.len(), 10);
    let skeleton = inst.matching.expect("badge instances carry their skeleton");
    assert_eq!(skeleton.len(), 5);
    assert!(!common::rainbow_aap_exists(&skeleton, &inst.family));
}

#[test]
fn latin_square_is_three_perfect_matchings() {
    let o = run(&["gen", "latin", "--order", "3", "--square", "123/231/312"]);
    assert!(o.status.success());
    let inst = Instance::parse(&stdout(&o)).unwrap();
    assert_eq!(inst.family.len(), 3);
    for c in inst.family.iter() {
        assert_eq!(c.len(), 3);
        assert!(validate_matching(c));
        // every edge joins a row label to a column label
        for e in c {
            let (a, b) = (inst.label(e.lo()), inst.label(e.hi()));
            assert!(a.starts_with('r') && b.starts_with('c'), "{a} {b}");
        }
    }
    assert!(common::rainbow_matching_exists(&inst.family, 3));
}

#[test]
fn mismatched_latin_order_rejected() {
    let o = run(&["gen", "latin", "--order", "4", "--square", "123/231/312"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_to(dir.path(), "r.json", &["random", "--n", "3", "--seed", "7"]);
    let w = dir.path().join("w.json").to_str().unwrap().to_string();
    let o = run(&["solve", &inst, "--mode", "main", "--n", "3", "--verify", "--out", &w]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(report["outcome"], "witness");
    assert_eq!(report["verified"], true);

    let parsed = Instance::parse(&std::fs::read_to_string(&inst).unwrap()).unwrap();
    let picks: Vec<(usize, Edge)> = report["witness"]["assignment"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            let l = |i: usize| a["edge"][i].as_str().unwrap().to_string();
            let id = |s: String| parsed.labels.iter().position(|x| *x == s).unwrap() as u32;
            (a["color"].as_u64().unwrap() as usize, Edge::of(id(l(0)), id(l(1))))
        })
        .collect();
    assert!(common::is_rainbow_matching(&parsed.family, &picks, 3));

    let v = run(&["verify", &inst, &w, "--n", "3"]);
    assert_eq!(v.status.code(), Some(0));
    let verdict: Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(verdict["valid"], true);
}

#[test]
fn oracle_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let s = gen_to(dir.path(), "s.json", &["sharpness", "--n", "4"]);
    assert_eq!(run(&["oracle", &s, "--n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", &s, "--n", "3"]).status.code(), Some(0));
    assert_eq!(run(&["oracle", &s, "--n", "4", "--budget", "5"]).status.code(), Some(3));
}

#[test]
fn wrong_color_count_and_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = gen_to(dir.path(), "s.json", &["sharpness", "--n", "4"]);
    let o = run(&["solve", &s, "--mode", "main", "--n", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colors"));
    let missing = dir.path().join("nope.json");
    assert_eq!(run(&["solve", missing.to_str().unwrap(), "--n", "3"]).status.code(), Some(1));
}

#[test]
fn generated_instances_round_trip() {
    for args in [
        vec!["gen", "sharpness", "--n", "2"],
        vec!["gen", "origamistrip", "--n", "3"],
        vec!["gen", "badge", "--host", "xy:2,xy:1"],
        vec!["gen", "random", "--n", "4", "--seed", "3", "--bipartite"],
        vec!["gen", "latin", "--order", "2", "--square", "12/21"],
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        let inst = Instance::parse(&text).unwrap();
        assert_eq!(inst.to_json().unwrap().trim(), text.trim(), "{args:?}");
    }
}

#[test]
fn seeded_generation_is_deterministic() {
    let a = run(&["gen", "random", "--n", "4", "--seed", "11"]);
    let b = run(&["gen", "random", "--n", "4", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}
