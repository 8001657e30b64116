//! Acceptance criteria 1-9, one line each. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fecverify::ber::run_parallel;
use fecverify::probe::Value;
use fecverify::registry::{manifest_ids, records, Category, RECORDS, RECORD_COUNT};
use fecverify::{verify_all, CheckResult, Status};
use fecverify_core::bch::table_check;
use fecverify_core::bounds::{coding_gain_db, coding_gain_db_uncorrected, q_function, GainFlavor, GainQuery, Rate};
use fecverify_core::sim::{ChannelKind, SimCode, SimConfig, Simulator};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn run_filter(filter: &str) -> Result<Vec<CheckResult>, String> {
    verify_all(Some(filter), 0).map_err(|e| e.to_string())
}

/// Every result passes and every twin failed.
fn all_pass(results: &[CheckResult]) -> Outcome {
    for r in results {
        if r.status != Status::Pass {
            let detail: Vec<String> = r
                .failures()
                .map(|m| format!("{}: expected {:?}, actual {}", m.label, m.expected, m.actual))
                .collect();
            return Err(format!("{} {:?} {:?} {}", r.id, r.status, r.reason, detail.join("; ")));
        }
    }
    Ok(format!("{} checks pass", results.len()))
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let t = start.elapsed();
    if t < limit {
        Ok(format!("{detail}, {:.2} s", t.as_secs_f64()))
    } else {
        Err(format!("{detail} but took {:.1} s (limit {} s)", t.as_secs_f64(), limit.as_secs()))
    }
}

fn bch_table() -> Outcome {
    let start = Instant::now();
    let rows = table_check().map_err(|e| e.to_string())?;
    for c in &rows {
        if !c.matches() {
            return Err(format!("{c:?}"));
        }
    }
    let detail = all_pass(&run_filter("p196-tab6.1*")?)?;
    within(Duration::from_secs(60), start, format!("{} entries exact; {detail}", rows.len()))
}

fn redundancy_caveat() -> Outcome {
    let results = run_filter("p195*")?;
    if results.len() != 2 {
        return Err(format!("expected 2 checks, got {}", results.len()));
    }
    all_pass(&results)
}

fn coding_gain() -> Outcome {
    for flavor in [GainFlavor::BlockSoft, GainFlavor::ConvSoft] {
        for d in 1..=99 {
            for (k, n) in [(1, 1), (1, 2), (2, 3), (4, 7)] {
                let q = GainQuery::new(Rate::new(k, n).unwrap(), d, flavor).unwrap();
                if (coding_gain_db(q) == coding_gain_db_uncorrected(q)) != (d % 2 == 0) {
                    return Err(format!("parity rule broken at d = {d}, R = {k}/{n}"));
                }
            }
        }
        let q = GainQuery::new(Rate::new(1, 1).unwrap(), 1, flavor).unwrap();
        if coding_gain_db(q) != 0.0 || (coding_gain_db_uncorrected(q) + 3.01).abs() > 0.01 {
            return Err("d = 1, R = 1 values".into());
        }
    }
    let mut results = run_filter("p018*")?;
    results.extend(run_filter("p532*")?);
    all_pass(&results)
}

fn soft_oracles() -> Outcome {
    let start = Instant::now();
    let results = run_filter("p562-eq12.104/sova-oracle")?;
    let detail = all_pass(&results)?;
    let instances = results[0]
        .measurements
        .iter()
        .find(|m| m.label == "instances")
        .map(|m| m.actual.clone());
    match instances {
        Some(Value::Int(n)) if n >= 1000 => within(Duration::from_secs(300), start, format!("{n} instances; {detail}")),
        other => Err(format!("instance count {other:?}")),
    }
}

fn maxlog_arithmetic() -> Outcome {
    all_pass(&run_filter("p576*")?)
}

fn ldpc_recurrence() -> Outcome {
    all_pass(&run_filter("p875-eq17.47*")?)
}

fn factorization() -> Outcome {
    all_pass(&run_filter("p567*")?)
}

fn ber_reproducibility() -> Outcome {
    let start = Instant::now();
    let cfg = SimConfig::new(ChannelKind::Awgn, SimCode::Uncoded, vec![0.0, 2.0, 4.0], 1_000_000, 20_240_601)
        .without_early_stop();
    let sim = Simulator::new(cfg).map_err(|e| e.to_string())?;
    let reference = run_parallel(&sim, 0).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for row in &reference {
        let expect = q_function((2.0 * 10f64.powf(row.x / 10.0)).sqrt());
        let sigma = (expect * (1.0 - expect) / row.bits as f64).sqrt();
        let z = (row.ber - expect).abs() / sigma;
        worst = worst.max(z);
        if row.trials != 1_000_000 || z >= 3.0 {
            return Err(format!("Eb/N0 = {} dB: ber {} vs {expect}, {z:.2} sigma", row.x, row.ber));
        }
    }
    for threads in [1, 2, 3] {
        if run_parallel(&sim, threads).map_err(|e| e.to_string())? != reference {
            return Err(format!("{threads} threads differ from the default pool"));
        }
    }
    within(
        Duration::from_secs(120),
        start,
        format!("3 points x 10^6 trials, max {worst:.2} sigma, identical at 1/2/3/default threads"),
    )
}

fn registry() -> Outcome {
    let ids: Vec<&str> = records().iter().map(|r| r.id).collect();
    if RECORDS.len() != RECORD_COUNT || manifest_ids() != ids {
        return Err(format!("{} records vs manifest of {}", RECORDS.len(), manifest_ids().len()));
    }
    let results = run_filter("FORMULA_VERIFIED")?;
    all_pass(&results)?;
    if results.iter().any(|r| !r.twin.as_ref().is_some_and(|t| t.failed_as_expected)) {
        return Err("a FORMULA_VERIFIED check lacks a failing twin".into());
    }
    let everything = verify_all(None, 0).map_err(|e| e.to_string())?;
    if everything.iter().any(|r| r.status == Status::Fail) {
        return Err("full run has failures".into());
    }
    let formula = RECORDS.iter().filter(|r| r.category == Category::FormulaVerified).count();
    Ok(format!(
        "{RECORD_COUNT} records match manifest; {} FORMULA_VERIFIED checks over {formula} records pass with failing twins",
        results.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("BCH table reproduction", bch_table),
        ("n - k = m t caveat", redundancy_caveat),
        ("coding-gain correction", coding_gain),
        ("soft-decoder oracle suite", soft_oracles),
        ("max-log arithmetic", maxlog_arithmetic),
        ("LDPC check-node recurrence", ldpc_recurrence),
        ("a-priori factorization", factorization),
        ("BER reproducibility", ber_reproducibility),
        ("registry completeness", registry),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
