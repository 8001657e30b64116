use std::process::{Command, Output};

use fecverify::formats::read_ber_csv;
use serde_json::Value;

fn fecverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fecverify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_all_exits_zero() {
    let out = fecverify(&["verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, v["results"].as_array().unwrap().len());
    assert!(v["results"][0].get("runtime_ms").is_none());
}

#[test]
fn glob_filter_selects_two_checks() {
    let out = fecverify(&["verify", "--filter", "p195*", "--format", "json", "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let results = json(&out)["results"].as_array().unwrap().clone();
    assert_eq!(results.len(), 2);
    assert!(results.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn textual_records_are_skipped() {
    let out = fecverify(&["verify", "--filter", "TEXTUAL", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["status"], "skipped");
        assert_eq!(r["reason"], "textual");
    }
    assert_eq!(v["summary"]["skipped_textual"], v["summary"]["total"]);
}

#[test]
fn timing_flag_keeps_runtimes() {
    let out = fecverify(&["verify", "--filter", "p040*", "--format", "json", "--timing"]);
    assert!(json(&out)["results"][0]["runtime_ms"].is_number());
    let text = fecverify(&["verify", "--filter", "p040*"]);
    assert!(String::from_utf8(text.stdout).unwrap().contains("1 passed, 0 failed"));
}

#[test]
fn unknown_filter_is_usage_error() {
    let out = fecverify(&["verify", "--filter", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn list_by_category() {
    let out = fecverify(&["list", "--category", "formula_verified", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let ids: Vec<String> = json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap().to_string())
        .collect();
    for want in ["p018-eq1.21", "p562-eq12.104", "p875-eq17.47"] {
        assert!(ids.iter().any(|id| id == want), "{want} missing from {ids:?}");
    }
}

#[test]
fn unknown_category_lists_allowed() {
    let out = fecverify(&["list", "--category", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("TEXTUAL") && err.contains("FORMULA_VERIFIED"), "{err}");
}

#[test]
fn ber_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ber.csv");
    let out = fecverify(&[
        "ber", "--code", "hamming74", "--channel", "awgn", "--points", "0,3", "--trials", "2000", "--seed", "7",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("x,ber,frame_errors,trials,stderr"));
    let rows = read_ber_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].x, 0.0);
    assert!(rows[0].ber > rows[1].ber);

    let again = dir.path().join("again.csv");
    fecverify(&[
        "ber", "--code", "hamming74", "--channel", "awgn", "--points", "0,3", "--trials", "2000", "--seed", "7",
        "--threads", "1", "--out", again.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&again).unwrap(), text);
}

#[test]
fn bad_code_name_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = fecverify(&[
        "ber", "--code", "golay", "--channel", "bsc", "--points", "0.01",
        "--out", dir.path().join("x.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
