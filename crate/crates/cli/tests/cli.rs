use std::process::Command;

use branchkit_cli::{run, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("branchkit").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = cli(&[&["--no-cache", "--format", "json"], args].concat());
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn branch_all_methods_agree() {
    let (code, out, _) = cli(&[
        "--no-cache", "branch", "--algebra", "A1~1", "--lambda1", "1,0", "--lambda2", "0,1", "--mu", "1,1",
        "--trunc", "10", "--method", "all",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with("verdict: agree"), "{out}");

    let v = json(&[
        "branch", "--algebra", "A1~1", "--lambda1", "1,0", "--lambda2", "1,0", "--mu", "2,0", "--trunc", "6",
        "--method", "all",
    ]);
    assert_eq!(v["agree"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 7);
}

#[test]
fn level_mismatch_is_a_usage_error() {
    let (code, out, err) = cli(&[
        "--no-cache", "branch", "--algebra", "A1~1", "--lambda1", "1,0", "--lambda2", "1,0", "--mu", "3,0",
        "--trunc", "5",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.starts_with("error: --mu:") && err.contains("level mismatch"), "{err}");
}

#[test]
fn bad_algebra_and_bad_method_are_usage_errors() {
    let (code, _, err) = cli(&["weyl", "--algebra", "Q7~1", "--max-length", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--algebra"), "{err}");

    let (code, _, err) = cli(&[
        "--no-cache", "branch", "--algebra", "A2~1", "--lambda1", "1,0,0", "--lambda2", "1,0,0", "--mu", "2,0,0",
        "--trunc", "4", "--method", "sl2-closed-1",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--method"), "{err}");
}

#[test]
fn verify_level_one_sweep() {
    let v = json(&["verify", "--algebra", "A1~1", "--levels", "1", "1", "--trunc", "8"]);
    assert_eq!(v["all_agree"], true);
    assert_eq!(v["triples"].as_array().unwrap().len(), 12);

    let (code, out, _) = cli(&["--no-cache", "verify", "--algebra", "A1~1", "--levels", "1", "1", "--trunc", "8"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("12 triples, 0 disagreeing"), "{out}");
}

#[test]
fn ikm_flags_match_label_flags() {
    let base = ["branch", "--algebra", "A1~1", "--trunc", "8", "--method", "bosonic2"];
    let labels = json(&[&base[..], &["--lambda1", "0,1", "--lambda2", "1,1", "--mu", "1,2"]].concat());
    let ikm = json(&[&base[..], &["--lambda1-ikm", "1,1", "--lambda2-ikm", "1,2", "--mu-ikm", "2,3"]].concat());
    assert_eq!(labels, ikm);
}

#[test]
fn coset_offset_is_rational_text() {
    let v = json(&[
        "branch", "--algebra", "A1~1", "--lambda1", "1,0", "--lambda2", "1,0", "--mu", "0,2", "--trunc", "6",
        "--coset",
    ]);
    // vacuum (x) vacuum into the level-2 spin-1 module: the h = 1/2 field
    assert_eq!(v["offset"], "-1/2");
    assert_eq!(v["series"][0][0], 1);
}

#[test]
fn char_identity_check_passes() {
    let (code, out, err) = cli(&[
        "--no-cache", "char", "--algebra", "B2~1", "--lambda", "1,0,0", "--trunc", "4", "--check-identity",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(!out.is_empty());
}

#[test]
fn cache_list_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, _, _) = cli(&[
        "--cache-dir", d, "branch", "--algebra", "A1~1", "--lambda1", "1,0", "--lambda2", "1,0", "--mu", "2,0",
        "--trunc", "5", "--method", "bosonic1",
    ]);
    assert_eq!(code, EXIT_OK);
    let (code, listing, _) = cli(&["--cache-dir", d, "cache", "list"]);
    assert_eq!(code, EXIT_OK);
    assert!(listing.contains("A1~1"), "{listing}");

    let (code, _, _) = cli(&["--cache-dir", d, "cache", "clear"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn binary_output_is_deterministic() {
    let args = [
        "--no-cache", "--format", "json", "verify", "--algebra", "A2~1", "--levels", "1", "1", "--trunc", "4",
    ];
    let first = Command::new(env!("CARGO_BIN_EXE_branchkit")).args(args).output().unwrap();
    let second = Command::new(env!("CARGO_BIN_EXE_branchkit")).args(args).output().unwrap();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let (_, inproc, _) = cli(&args);
    assert_eq!(first.stdout, inproc.as_bytes());
}
