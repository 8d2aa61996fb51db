use std::process::Command;

use dahecke::cli::{run, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["dahecke"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn kl_polynomial_text() {
    let (code, out, _) = call(&["kl", "1324", "3412", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1+q");
    let (_, out, _) = call(&["kl", "[1,2,3]", "s1 s2 s1", "--n", "3"]);
    assert_eq!(out.trim(), "1");
}

#[test]
fn standard_module_dimension() {
    let (code, out, _) = call(&["standard", "--segments", "[0,1];[-1,-1]"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "dim 3"), "{out}");
}

#[test]
fn functor_verma_json() {
    let (code, out, _) =
        call(&["--format", "json", "functor", "verma", "--lambda", "(0,0)", "--mu", "(0,0)", "--ell", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["s"].as_array().unwrap().len(), 1);
}

#[test]
fn functor_simple_and_classify() {
    let (code, out, _) = call(&["functor", "simple", "--lambda", "(0,0,0)", "--w", "s1 s2"]);
    assert_eq!(code, 0);
    assert!(out.contains("dim 1"));
    let (code, out, _) = call(&["--format", "json", "classify", "--lambda", "(0,0)"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn non_dominant_simple_is_a_precondition_error() {
    let (code, _, err) = call(&["functor", "simple", "--lambda", "(-1,1)", "--w", "e"]);
    assert_eq!(code, 1);
    assert!(err.contains("dominant"));
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["standard", "--segments", "[0,1"]).0, 1);
    assert_eq!(call(&["functor", "verma", "--lambda", "0,0", "--mu", "(0,0)", "--ell", "2"]).0, 1);
    assert_eq!(call(&["kl", "1324", "s9", "--n", "4"]).0, 1);
    assert_eq!(call(&["verify", "--suite", "nonsense"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn output_is_reproducible() {
    let args = ["--format", "json", "functor", "verma", "--lambda", "(0,0,0)", "--mu", "(-1,1,0)", "--ell", "3"];
    assert_eq!(call(&args), call(&args));
    let args = ["classify", "--lambda", "(0,1,1)"];
    assert_eq!(call(&args), call(&args));
}

#[test]
fn decompose_round_trip() {
    let (_, json, _) = call(&["--format", "json", "standard", "--segments", "[0,0];[1,1];[2,2]"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, json).unwrap();
    let (code, out, _) = call(&["--format", "json", "decompose", "--module", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let total: u64 = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["dim"].as_u64().unwrap() * f["multiplicity"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 6);
    assert_eq!(v["factors"].as_array().unwrap().len(), 4);
}

#[test]
fn bad_module_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"dim":1,"s":[[["2"]]],"eps":[[["0"]],[["0"]]]}"#).unwrap();
    assert_eq!(call(&["decompose", "--module", path.to_str().unwrap()]).0, 1);
    assert_eq!(call(&["decompose", "--module", dir.path().join("missing.json").to_str().unwrap()]).0, 1);
}

#[test]
fn kl_cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("kl.txt");
    let bin = env!("CARGO_BIN_EXE_dahecke");
    let first = Command::new(bin).args(["kl", "2143", "4231", "--n", "4"]).env("KL_CACHE", &cache).output().unwrap();
    assert!(first.status.success());
    assert_eq!(String::from_utf8_lossy(&first.stdout).trim(), "1+q");
    let stored = std::fs::read_to_string(&cache).unwrap();
    assert!(stored.lines().count() > 0);
    let second = Command::new(bin).args(["kl", "2143", "4231", "--n", "4"]).env("KL_CACHE", &cache).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), stored);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dahecke");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["kl", "123", "321", "--n", "3"]), Some(0));
    assert_eq!(code(&["unknown"]), Some(EXIT_USAGE));
    assert_eq!(code(&["classify", "--lambda", "(-1,1)"]), Some(1));
}
