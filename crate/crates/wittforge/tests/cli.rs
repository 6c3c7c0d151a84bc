use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittforge")).args(args).env_remove("WITTFORGE_CACHE_DIR").output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn witt_add_example() {
    let out = run(&["witt", "add", "--ring", "integers", "--index-set", "div:2", "--a", "1,0", "--b", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), r#"{"coords":{"1":"2","2":"-1"}}"#);
}

#[test]
fn derham_gm_report() {
    let out = run(&["derham", "--torus", "1", "--affine", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["H"], serde_json::json!({ "0": 1, "1": 1 }));
    assert_eq!(v["Fil"]["1"], serde_json::json!({ "1": 1, "2": 0 }));
}

#[test]
fn negative_coordinates_and_pretty_output() {
    let out = run(&["witt", "neg", "--ring", "zmod:4", "--index-set", "ptyp:2:2", "--a", "-1,2", "--pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.contains('\n') && text.lines().count() > 2);
    stdout_json(&out);
}

#[test]
fn predicates_set_exit_code() {
    let ht = run(&["hodge-tate", "--ring", "zmod:4", "--index-set", "ptyp:2:2", "--a", "0,1"]);
    assert_eq!(ht.status.code(), Some(0));
    assert_eq!(stdout_json(&ht)["hodge_tate"], true);
    let not_ht = run(&["hodge-tate", "--ring", "zmod:4", "--index-set", "ptyp:2:2", "--a", "1,0"]);
    assert_eq!(not_ht.status.code(), Some(1));
    let dist = run(&["distinguished", "--ring", "zmod:4", "--index-set", "ptyp:2:2", "--a", "2,3"]);
    assert_eq!(dist.status.code(), Some(0));
    let unit = run(&["witt", "unit", "--ring", "zmod:4", "--index-set", "div:2", "--a", "2,1"]);
    assert_eq!(unit.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["witt", "add", "--index-set", "div:2", "--a", "1,0"]).status.code(), Some(2));
    let bad_ring = run(&["ghost", "--ring", "zmod:0x", "--index-set", "div:2", "--a", "1,0"]);
    assert_eq!(bad_ring.status.code(), Some(2));
    assert!(!bad_ring.stderr.is_empty());
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn nonfree_and_cone() {
    let out = run(&["witt", "nonfree", "--index-set", "div:10"]);
    let v = stdout_json(&out);
    assert_eq!(v["certificate"]["result"], "unsat");
    assert_eq!(v["certificate"]["congruence"], serde_json::json!({ "n": 10, "m": 2, "p": 5 }));
    let cone = run(&["cone", "--ring", "poly(integers; a, b)", "--d", "a,b"]);
    assert_eq!(cone.status.code(), Some(1));
    let ideal = run(&["cone", "--ring", "poly(integers; a, b)", "--d", "a,b", "--from-ideal"]);
    assert_eq!(ideal.status.code(), Some(0));
    assert_eq!(stdout_json(&ideal)["law"], Value::Null);
}

#[test]
fn rees_from_file_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("m.json");
    std::fs::write(&input, r#"{"dim":2,"lo":0,"pieces":[[[1,0],[0,1]],[[1,1]]],"top":"zero"}"#).unwrap();
    let output = dir.path().join("out.json");
    let out = run(&["rees", "--filtered", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(output).unwrap()).unwrap();
    assert_eq!(v["rees"]["generators"], serde_json::json!({ "-1": 1, "0": 1 }));
}

#[test]
fn prismatic_dual_numbers() {
    let out = run(&["prismatic", "--ring", "zmod:4", "--index-set", "ptyp:2:1", "--xi", "2", "--vars", "x", "--relation", "x^2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["groupoid"]["objects"].as_array().unwrap().len(), 4);
    let not_distinguished = run(&["prismatic", "--ring", "zmod:4", "--index-set", "ptyp:2:1", "--xi", "1", "--vars", "x"]);
    assert_eq!(not_distinguished.status.code(), Some(2));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["verify", "--suite", "witt-operators", "--seed", "7"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let list = stdout_json(&run(&["verify", "--list"]));
    for module in ["ring_core", "witt_core", "witt_struct", "cone", "rees_filtration", "derham", "prismatic_points", "cli"] {
        assert!(!list["coverage"][module].as_object().unwrap().is_empty(), "{module}");
    }
}

#[test]
fn polynomial_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["witt", "mul", "--ring", "zmod:4", "--index-set", "div:6", "--a", "1,2,3,1", "--b", "2,0,1,1"];
    let first = Command::new(env!("CARGO_BIN_EXE_wittforge")).args(args).env("WITTFORGE_CACHE_DIR", dir.path()).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(files > 0);
    let second = Command::new(env!("CARGO_BIN_EXE_wittforge")).args(args).env("WITTFORGE_CACHE_DIR", dir.path()).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(run(&args).stdout, first.stdout);
}
