//! Text and JSON reports over a set of [`CheckResult`]s.

use std::fmt::Write;

use serde::Serialize;

use crate::registry::Category;
use crate::verify::{CheckResult, Status};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped_context_missing: usize,
    pub skipped_textual: usize,
}

impl Summary {
    pub fn of(results: &[CheckResult]) -> Self {
        let mut s = Summary {
            total: results.len(),
            ..Summary::default()
        };
        for r in results {
            match (r.status, r.category) {
                (Status::Pass, _) => s.passed += 1,
                (Status::Fail, _) => s.failed += 1,
                (Status::Skipped, Category::Textual) => s.skipped_textual += 1,
                (Status::Skipped, _) => s.skipped_context_missing += 1,
            }
        }
        s
    }
}

#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    schema_version: u32,
    failures: usize,
    summary: Summary,
    results: &'a [CheckResult],
}

/// 0 when nothing failed, 1 otherwise.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    i32::from(results.iter().any(|r| r.status == Status::Fail))
}

fn strip_runtime(v: &mut serde_json::Value) {
    if let Some(results) = v.get_mut("results").and_then(|r| r.as_array_mut()) {
        for r in results {
            if let Some(o) = r.as_object_mut() {
                o.remove("runtime_ms");
            }
        }
    }
}

/// Pretty JSON; `timing = false` drops runtimes so reruns compare equal.
pub fn to_json(results: &[CheckResult], timing: bool) -> String {
    let summary = Summary::of(results);
    let report = JsonReport {
        schema_version: SCHEMA_VERSION,
        failures: summary.failed,
        summary,
        results,
    };
    let mut v = serde_json::to_value(&report).expect("report serializes");
    if !timing {
        strip_runtime(&mut v);
    }
    serde_json::to_string_pretty(&v).expect("value serializes")
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skip",
    }
}

/// Page-ordered table, one line per result, failing measurements indented below.
pub fn to_text(results: &[CheckResult], timing: bool) -> String {
    let mut rows: Vec<&CheckResult> = results.iter().collect();
    rows.sort_by_key(|r| r.page);
    let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let mut out = String::new();
    let _ = writeln!(out, "{:>5}  {:<width$}  {:<16}  {:<6}  note", "page", "id", "category", "status");
    for r in rows {
        let mut note = r.reason.clone().unwrap_or_default();
        if timing {
            let _ = write!(note, "{}{:.1} ms", if note.is_empty() { "" } else { "; " }, r.runtime_ms);
        }
        let _ = writeln!(
            out,
            "{:>5}  {:<width$}  {:<16}  {:<6}  {note}",
            r.page,
            r.id,
            r.category.as_str(),
            status_str(r.status)
        );
        if r.status == Status::Fail {
            for m in r.failures() {
                let expected = m.expected.as_ref().map_or("-".to_string(), ToString::to_string);
                let _ = writeln!(out, "{:>7}{}: expected {expected}, actual {}", "", m.label, m.actual);
            }
            if let Some(t) = r.twin.as_ref().filter(|t| !t.failed_as_expected) {
                let _ = writeln!(out, "{:>7}uncorrected twin passed {} measurements", "", t.measurements.len());
            }
        }
    }
    let s = Summary::of(results);
    let _ = writeln!(
        out,
        "\n{} results: {} passed, {} failed, {} skipped (context missing), {} skipped (textual)",
        s.total, s.passed, s.failed, s.skipped_context_missing, s.skipped_textual
    );
    out
}
