use fecverify::probe::Probe;
use fecverify::registry::records;
use fecverify::report::{exit_code, to_json, to_text, Summary};
use fecverify::verify::TwinOutcome;
use fecverify::{verify_all, Status};

#[test]
fn reruns_are_identical_without_timing() {
    let a = verify_all(None, 3).unwrap();
    let b = verify_all(None, 1).unwrap();
    assert_eq!(to_json(&a, false), to_json(&b, false));
    assert_eq!(to_text(&a, false), to_text(&b, false));
}

#[test]
fn one_result_per_check_or_record() {
    let results = verify_all(None, 0).unwrap();
    let expected: usize = records().iter().map(|r| r.checks.len().max(1)).sum();
    assert_eq!(results.len(), expected);
    let pages: Vec<u32> = results.iter().map(|r| r.page).collect();
    assert!(pages.windows(2).all(|w| w[0] <= w[1]));
    let s = Summary::of(&results);
    assert_eq!(s.total, s.passed + s.failed + s.skipped_context_missing + s.skipped_textual);
    assert_eq!(s.failed, 0);
}

#[test]
fn context_missing_checks_still_measure() {
    let results = verify_all(Some("CONTEXT_MISSING"), 0).unwrap();
    assert!(!results.is_empty());
    for r in &results {
        assert_eq!(r.status, Status::Skipped);
        assert_eq!(r.reason.as_deref(), Some("context missing"));
    }
    assert!(results.iter().any(|r| !r.measurements.is_empty()));
}

#[test]
fn failures_are_reported() {
    let mut results = verify_all(Some("p040*"), 1).unwrap();
    assert_eq!(exit_code(&results), 0);
    let mut p = Probe::new();
    p.close("injected", 1.0, 2.5, 1e-9);
    let r = &mut results[0];
    r.status = Status::Fail;
    r.measurements = p.into_measurements();
    r.twin = Some(TwinOutcome {
        failed_as_expected: false,
        measurements: Vec::new(),
    });
    assert_eq!(exit_code(&results), 1);
    let text = to_text(&results, false);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("injected: expected 1.000000e0, actual 2.500000e0"), "{text}");
    assert!(text.contains("1 failed"));
    let json: serde_json::Value = serde_json::from_str(&to_json(&results, false)).unwrap();
    assert_eq!(json["failures"], 1);
    assert_eq!(json["results"][0]["status"], "fail");
}
