//! End-to-end checks of the command-line interface, including the cache file
//! workflow.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qsphere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsphere"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim_end().to_string()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qsphere-cli-{}-{}", tag, std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn nf_normalizes_in_all_contexts() {
    let out = qsphere(&["nf", "-c", "P", "z2 z1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q^-1*z1 z2");

    let out = qsphere(&["nf", "-c", "SU2", "d a"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 + q^-1*b c");

    let out = qsphere(&["nf", "-c", "C", "r[0,0,0]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "r[0,0,0]");
}

#[test]
fn nf_rejects_unknown_token_with_position() {
    let out = qsphere(&["nf", "-c", "P", "z5"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1:1"), "missing position in: {}", err);
    assert!(err.contains("unknown token"), "unexpected message: {}", err);
}

#[test]
fn tau_base_case() {
    let out = qsphere(&["tau", "0", "0", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 ⊗ 1");
}

#[test]
fn deltar_of_coinvariant_is_trivial() {
    let out = qsphere(&["deltar", "z1 z4* - z2 z3*"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("r[0,0,0]") && !text.contains("r[1") && !text.contains("r[-1"),
        "unexpected coaction: {}",
        text
    );
}

#[test]
fn verify_subcommand_exit_status() {
    let out = qsphere(&["verify", "S4", "--max-degree", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("cases: 1"));
    assert!(text.contains("status: PASS"));

    let out = qsphere(&["verify", "S9"]);
    assert!(!out.status.success());
}

#[test]
fn cache_workflow_round_trip() {
    let dir = temp_dir("cache");
    let cache = dir.join("tau.cache");
    let cache_str = cache.to_str().unwrap();

    // first run computes and persists
    let out = qsphere(&["tau", "1", "1", "0", "--cache", cache_str, "--verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let first = stdout(&out);
    assert!(cache.exists());
    let bytes_before = std::fs::read(&cache).unwrap();

    // second run loads the same value and leaves the file byte-identical
    let out = qsphere(&["tau", "1", "1", "0", "--cache", cache_str]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), first);
    assert_eq!(std::fs::read(&cache).unwrap(), bytes_before);

    // the checker accepts the file
    let out = qsphere(&["cache", "check", cache_str]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("invalid: 0"));

    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cache_check_flags_corrupt_entries_and_gc_drops_them() {
    let dir = temp_dir("gc");
    let cache = dir.join("tau.cache");
    let cache_str = cache.to_str().unwrap();

    let out = qsphere(&["tau", "1", "0", "0", "--cache", cache_str]);
    assert!(out.status.success());

    // corrupt the entry: claim tau(1,0,0) = 1 (x) 1
    let text = std::fs::read_to_string(&cache).unwrap();
    let corrupted: String = text
        .lines()
        .map(|l| {
            if l.starts_with("tau 1 0 0") {
                "tau 1 0 0 := 1 ⊗ 1".to_string()
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    std::fs::write(&cache, corrupted).unwrap();

    let out = qsphere(&["cache", "check", cache_str]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("bad: tau 1 0 0"));

    // loading with verification enabled also rejects it
    let out = qsphere(&["tau", "1", "0", "0", "--cache", cache_str, "--verify"]);
    assert!(!out.status.success());

    let out = qsphere(&["cache", "gc", cache_str]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dropped: 1"));

    let out = qsphere(&["cache", "check", cache_str]);
    assert!(out.status.success());

    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn degree_cap_is_enforced() {
    let out = qsphere(&["--degree-cap", "2", "tau", "3", "0", "0"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("degree cap"), "unexpected message: {}", err);
}

#[test]
fn env_var_names_the_default_cache() {
    let dir = temp_dir("env");
    let cache = dir.join("tau.cache");
    let out = Command::new(env!("CARGO_BIN_EXE_qsphere"))
        .args(["tau", "0", "1", "0"])
        .env("QSPHERE_TAU_CACHE", &cache)
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert!(cache.exists(), "cache file not created via the env var");
    std::fs::remove_dir_all(&dir).unwrap();
}
