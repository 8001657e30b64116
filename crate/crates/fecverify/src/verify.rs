//! Running checks and collecting their results.

use std::time::Instant;

use glob::Pattern;
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{self, Check};
use crate::error::{HarnessError, Result};
use crate::probe::{Measurement, Probe};
use crate::registry::{records, Category, ErratumRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of running a check's uncorrected twin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwinOutcome {
    /// True when the uncorrected form failed, which is what the check wants.
    pub failed_as_expected: bool,
    pub measurements: Vec<Measurement>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    /// Check id, or the record id for records without checks.
    pub id: String,
    pub record: &'static str,
    pub page: u32,
    pub category: Category,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub measurements: Vec<Measurement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twin: Option<TwinOutcome>,
    pub runtime_ms: f64,
}

impl CheckResult {
    /// Failing measurements of the check itself.
    pub fn failures(&self) -> impl Iterator<Item = &Measurement> {
        self.measurements.iter().filter(|m| !m.ok)
    }
}

/// A category name or a glob over record and check ids.
#[derive(Debug, Clone)]
pub enum Filter {
    All,
    Category(Category),
    Glob(Pattern),
}

impl Filter {
    pub fn parse(s: Option<&str>) -> Result<Self> {
        let Some(s) = s.filter(|s| !s.is_empty()) else {
            return Ok(Filter::All);
        };
        if let Ok(c) = s.parse::<Category>() {
            return Ok(Filter::Category(c));
        }
        let pat = Pattern::new(s).map_err(|e| HarnessError::BadPattern {
            pattern: s.to_string(),
            reason: e.msg.to_string(),
        })?;
        Ok(Filter::Glob(pat))
    }

    fn selects(&self, record: &ErratumRecord, check: Option<&str>) -> bool {
        match self {
            Filter::All => true,
            Filter::Category(c) => record.category == *c,
            Filter::Glob(p) => p.matches(record.id) || check.is_some_and(|c| p.matches(c)),
        }
    }
}

/// One unit of work: a record and, if it has any, one of its checks.
#[derive(Clone, Copy)]
pub struct Job {
    pub record: &'static ErratumRecord,
    pub check: Option<&'static Check>,
}

/// Jobs selected by `filter`, in page order.
pub fn plan(filter: &Filter) -> Vec<Job> {
    let mut jobs = Vec::new();
    for record in records() {
        if record.checks.is_empty() {
            if filter.selects(record, None) {
                jobs.push(Job { record, check: None });
            }
            continue;
        }
        for id in record.checks {
            if filter.selects(record, Some(id)) {
                let check = checks::find(id).expect("registry checks exist");
                jobs.push(Job { record, check: Some(check) });
            }
        }
    }
    jobs
}

fn skip_reason(category: Category) -> &'static str {
    match category {
        Category::Textual => "textual",
        _ => "context missing",
    }
}

pub fn run_job(job: Job) -> CheckResult {
    let start = Instant::now();
    let record = job.record;
    let base = |id: &str| CheckResult {
        id: id.to_string(),
        record: record.id,
        page: record.page,
        category: record.category,
        status: Status::Skipped,
        reason: Some(skip_reason(record.category).to_string()),
        measurements: Vec::new(),
        twin: None,
        runtime_ms: 0.0,
    };
    let Some(check) = job.check else {
        return base(record.id);
    };
    let mut result = base(check.id);
    let mut probe = Probe::new();
    (check.run)(&mut probe);
    let passed = probe.passed();
    result.measurements = probe.into_measurements();
    result.twin = check.twin.map(|twin| {
        let mut t = Probe::new();
        twin(&mut t);
        TwinOutcome {
            failed_as_expected: !t.passed(),
            measurements: t.into_measurements(),
        }
    });
    if record.category.is_verified() {
        let twin_ok = result.twin.as_ref().is_none_or(|t| t.failed_as_expected);
        (result.status, result.reason) = match (passed, twin_ok) {
            (true, true) => (Status::Pass, None),
            (false, _) => (Status::Fail, Some("corrected form failed".into())),
            (true, false) => (Status::Fail, Some("uncorrected twin passed".into())),
        };
    }
    result.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    result
}

/// Runs every selected check once, `threads` wide (0 = rayon default).
/// Results come back in page order regardless of width.
pub fn verify_all(filter: Option<&str>, threads: usize) -> Result<Vec<CheckResult>> {
    let f = Filter::parse(filter)?;
    let jobs = plan(&f);
    if jobs.is_empty() {
        return Err(HarnessError::UnknownFilter(filter.unwrap_or_default().to_string()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    Ok(pool.install(|| jobs.par_iter().map(|&j| run_job(j)).collect()))
}
