use std::process::{Command, Output};

use serde_json::Value;

fn tracecode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracecode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn params_m3_m5() {
    let out = tracecode(&["params", "--m", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["n"], "56");
    assert_eq!(v["n_bin"], "112");
    assert_eq!(v["k_bin"], "12");
    assert_eq!(v["reduction_poly"], "0xb");

    let v = json(&tracecode(&["params", "--m", "5"]));
    assert_eq!(
        (v["n"].as_str(), v["n_bin"].as_str(), v["k_bin"].as_str()),
        (Some("992"), Some("1984"), Some("20"))
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tracecode(&["params", "--m", "1"]).status.code(), Some(2));
    assert_eq!(
        tracecode(&["params", "--m", "3", "--poly", "0xf"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tracecode(&["params"]).status.code(), Some(2));
    assert_eq!(
        tracecode(&["verify", "--m", "3", "--threads", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tracecode(&["verify", "--m", "3", "--max-lee", "5"])
            .status
            .code(),
        Some(2)
    );
    let out = tracecode(&["verify", "--m", "4", "--theorem"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis not met"));
}

#[test]
fn infeasible_exit_3() {
    assert_eq!(
        tracecode(&["verify", "--m", "5", "--max-lee", "4"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(tracecode(&["verify", "--m", "7"]).status.code(), Some(3));
}

#[test]
fn enumerate_m3_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = tracecode(&[
        "enumerate",
        "--m",
        "3",
        "--cache-dir",
        cache,
        "--threads",
        "2",
    ]);
    assert!(first.status.success());
    assert!(String::from_utf8_lossy(&first.stderr).contains("cache stored"));
    let v = json(&first);
    assert_eq!(
        v["nonzero_weights"],
        serde_json::json!([32, 48, 56, 64, 96])
    );
    assert_eq!(v["distribution"]["32"], "21");

    let second = tracecode(&["enumerate", "--m", "3", "--cache-dir", cache]);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);
}

fn without_timings(path: &std::path::Path) -> Value {
    let mut v: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn verify_m3_report() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = tracecode(&["verify", "--m", "3", "--json-out", a.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = tracecode(&[
        "verify",
        "--m",
        "3",
        "--threads",
        "3",
        "--json-out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let v = without_timings(&a);
    assert_eq!(v, without_timings(&b));
    let full: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    let keys: Vec<&String> = full.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "distribution",
            "dual",
            "findings",
            "moments",
            "spec",
            "sss",
            "theorem43",
            "timings"
        ]
    );
    assert!(!v["findings"].as_array().unwrap().is_empty());
    assert_eq!(v["dual"]["search"]["counts"]["2"], "56");
    assert_eq!(v["sss"]["access_structure"]["users"], "111");
}

#[test]
fn verify_even_m_skips_odd_only_parts() {
    let out = tracecode(&["verify", "--m", "4", "--trials", "10"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["theorem43"]["applicable"], false);
    assert!(v["moments"]["report"].is_null());
}
