use std::process::{Command, Output};

use serde_json::Value;

fn imprim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_imprim")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn tmp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("imprim-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn tau_shift_at_4_2_2() {
    let out = imprim(&["tau-shift", "--r", "4", "--p", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["schema"], 1);
    assert_eq!(rep["passed"], true);
    let shapes = rep["result"]["shapes"].as_array().unwrap();
    assert_eq!(shapes.len(), 14);
    assert!(shapes.iter().all(|s| s["passed"] == true));
    assert_eq!(rep["params"]["r"], 4);
}

#[test]
fn bn_dn_demo_lists_bipartitions() {
    let out = imprim(&["bn-dn-demo", "--n", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.contains("merge") && !r.contains("FAIL")));

    let out = imprim(&["bn-dn-demo", "--n", "2"]);
    let rows = report(&out)["result"]["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 5);
    let split: Vec<_> = rows.iter().filter(|r| r["verdict"] == "split").collect();
    assert_eq!(split.len(), 1);
    assert_eq!(split[0]["summand_dims"], serde_json::json!([1, 1]));
}

#[test]
fn colliding_v_is_degenerate() {
    let out = imprim(&["verify-relations", "--r", "4", "--p", "2", "--n", "2", "--v", "1,-1"]);
    assert_eq!(out.status.code(), Some(2));
    let rep = report(&out);
    assert_eq!(rep["error"]["kind"], "SeparationFailure");
    assert_eq!(rep["params"]["v"], serde_json::json!(["1", "-1"]));
}

#[test]
fn bad_config_exits_2() {
    let out = imprim(&["reps", "--config", "/nonexistent/imprim.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["kind"], "Config");
    let out = imprim(&["group", "--r", "4", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["kind"], "BadParams");
}

#[test]
fn incompatible_k_fails_with_witness() {
    let k = tmp("k.json", r#"{"coordinate": ["1/3"], "difference": ["1/2"]}"#);
    let out = imprim(&["thm34", "--r", "2", "--p", "2", "--n", "2", "--k-file", k.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let rep = report(&out);
    assert_eq!(rep["passed"], false);
    assert!(rep["result"]["report"]["witness"].is_object());
}

#[test]
fn identical_config_gives_identical_reports() {
    let cfg = tmp("cfg.json", r#"{"r": 3, "p": 3, "n": 2, "q": "3", "degree": 2}"#);
    let cfg = cfg.to_str().unwrap();
    let a = imprim(&["decompose", "--config", cfg]);
    let b = imprim(&["decompose", "--config", cfg]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    // flags override the file
    let c = imprim(&["decompose", "--config", cfg, "--n", "1"]);
    assert_eq!(report(&c)["params"]["n"], 1);
}

#[test]
fn every_command_passes_at_defaults() {
    for cmd in [
        "group",
        "reps",
        "verify-relations",
        "tau-shift",
        "decompose",
        "fixed-subalgebra",
        "smash-census",
        "dunkl-check",
        "thm34",
        "graded-res",
        "fake-degrees",
        "bn-dn-demo",
    ] {
        let out = imprim(&[cmd, "--r", "2", "--p", "2", "--n", "2"]);
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
