use std::ops::Sub;

use fecverify_core::soft::{
    apriori_llr, bcjr, max_log_l_value, max_of, partial_metrics, reliability_update, sova, sova_with_rule,
    viterbi_path, AprioriFactor, LlrSequence, MapMode, Observation, ReliabilityRule,
};

use super::oracle::{rng, Instance};
use crate::probe::Probe;

const SUITE_INSTANCES: usize = 1000;
const SUITE_MAX_H: usize = 10;

fn observation(inst: &Instance) -> Observation {
    Observation::awgn(inst.y.clone(), inst.es, inst.n0).expect("positive parameters")
}

/// Partial metrics along the ML path against a direct sum over the first
/// `t + 1` branches. `shift` moves the reading back by one branch.
fn partial_metrics_check(p: &mut Probe, shift: bool) {
    let mut r = rng(0x1286);
    let (mut errs, mut ll_errs, mut final_errs) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..200 {
        let inst = Instance::random(&mut r, 8, false);
        let obs = observation(&inst);
        let path = viterbi_path(&obs, &inst.trellis).expect("terminated");
        let pm = partial_metrics(&obs, &inst.trellis, &path.info).expect("lengths match");
        let read: Vec<f64> = if shift {
            std::iter::once(0.0).chain(pm[..pm.len() - 1].iter().copied()).collect()
        } else {
            pm.clone()
        };
        let s = inst.es.sqrt();
        let mut acc = 0.0;
        let mut ll = 0.0;
        let mut bits = 0;
        for (t, sec) in inst.trellis.sections().iter().enumerate() {
            for i in bits..bits + sec.code_bits {
                let x = if path.code[i] == 0 { s } else { -s };
                acc += (inst.y[i] - x).powi(2);
                ll += -(inst.y[i] - x).powi(2) / inst.n0 - 0.5 * (std::f64::consts::PI * inst.n0).ln();
            }
            bits += sec.code_bits;
            errs.push((read[t] - acc).abs());
            let from_metric = -read[t] / inst.n0 - 0.5 * bits as f64 * (std::f64::consts::PI * inst.n0).ln();
            ll_errs.push((from_metric - ll).abs());
        }
        final_errs.push((read[read.len() - 1] - path.metric).abs());
    }
    p.max_error("metric after branch t vs sum over branches 0..=t", errs, 1e-9);
    p.max_error("metric vs ln p([r]_(t+1) | [v]_(t+1))", ll_errs, 1e-9);
    p.max_error("last partial metric vs path metric", final_errs, 1e-9);
}

pub fn partial_metrics_aligned(p: &mut Probe) {
    partial_metrics_check(p, false);
}

pub fn partial_metrics_shifted(p: &mut Probe) {
    partial_metrics_check(p, true);
}

const P_GRID: [f64; 7] = [0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99];

fn apriori_term_check(p: &mut Probe, with_constant: bool) {
    let mut errs = Vec::new();
    for pp in P_GRID {
        let la = apriori_llr(pp);
        let c = if with_constant { (pp * (1.0 - pp)).ln() } else { 0.0 };
        for (b, prob) in [(1.0, pp), (-1.0, 1.0 - pp)] {
            errs.push((AprioriFactor::log_probability(la, b) - prob.ln()).abs());
            errs.push((2.0 * prob.ln() - c - b * la).abs());
        }
    }
    p.max_error("2 ln P(U=b) - ln(P+ P-) vs b L_a", errs, 1e-12);

    // SOVA with priors must follow the MAP sequence.
    let mut r = rng(0x1289);
    let mut agree = 0;
    let n = 300;
    for _ in 0..n {
        let inst = Instance::random(&mut r, 8, true);
        let w = inst.weights();
        let s = sova(&observation(&inst), &inst.trellis, &LlrSequence::new(inst.la.clone())).expect("valid");
        agree += usize::from(s.hard == inst.best(&w));
    }
    p.equal("SOVA hard output equals MAP sequence", n, agree);
}

pub fn apriori_term(p: &mut Probe) {
    apriori_term_check(p, true);
}

pub fn apriori_term_without_constant(p: &mut Probe) {
    apriori_term_check(p, false);
}

/// One information bit: SOVA, log-MAP and the exact ratio coincide.
fn sova_scaling_check(p: &mut Probe, factor: f64) {
    let mut r = rng(0x1299);
    let mut errs = Vec::new();
    for _ in 0..300 {
        let enc = super::oracle::random_encoder(&mut r);
        let inst = Instance::for_encoder(&mut r, &enc, 1, false);
        let obs = observation(&inst);
        let s = sova(&obs, &inst.trellis, &LlrSequence::zeros(1)).expect("valid");
        let w = inst.weights();
        errs.push((factor * s.llr[0] - inst.app_llr(&w, 0)).abs());
    }
    p.max_error("single-bit SOVA L vs exact L", errs, 1e-9);
}

pub fn sova_half_scaling(p: &mut Probe) {
    sova_scaling_check(p, 1.0);
}

pub fn sova_full_scaling(p: &mut Probe) {
    sova_scaling_check(p, 2.0);
}

fn suite(p: &mut Probe, rule: ReliabilityRule) {
    let mut r = rng(0x4C0A);
    let (mut app_err, mut maxlog_err, mut metric_err) = (Vec::new(), Vec::new(), Vec::new());
    let (mut vit_ok, mut sova_ok, mut bound_ok) = (0usize, 0usize, 0usize);
    for k in 0..SUITE_INSTANCES {
        let with_priors = k % 2 == 1;
        let inst = Instance::random(&mut r, SUITE_MAX_H, with_priors);
        let obs = observation(&inst);
        let la = LlrSequence::new(inst.la.clone());
        let w = inst.weights();
        let log = bcjr(&obs, &inst.trellis, &la, MapMode::Log).expect("valid");
        let maxlog = bcjr(&obs, &inst.trellis, &la, MapMode::MaxLog).expect("valid");
        for l in 0..inst.h() {
            app_err.push((log.a_posteriori[l] - inst.app_llr(&w, l)).abs());
            maxlog_err.push((maxlog.a_posteriori[l] - inst.maxlog_llr(&w, l)).abs());
        }
        if with_priors {
            continue;
        }
        let path = viterbi_path(&obs, &inst.trellis).expect("terminated");
        vit_ok += usize::from(path.info == inst.best(&w));
        let uniform = inst.h() as f64 * 0.5f64.ln();
        metric_err.push((-path.metric / inst.n0 + uniform - w.iter().copied().fold(f64::NEG_INFINITY, f64::max)).abs());
        let s = sova_with_rule(&obs, &inst.trellis, &la, rule).expect("valid");
        sova_ok += usize::from(s.hard == path.info);
        let dominates = (0..inst.h()).all(|l| {
            let m = maxlog.a_posteriori[l];
            s.llr[l] * m >= 0.0 && s.llr[l].abs() >= m.abs() - 1e-9
        });
        bound_ok += usize::from(dominates);
    }
    let ml_trials = SUITE_INSTANCES / 2;
    p.note("instances", SUITE_INSTANCES);
    p.max_error("log-MAP L vs exhaustive posterior", app_err, 1e-9);
    p.max_error("max-log L vs constrained max", maxlog_err, 1e-9);
    p.equal("Viterbi equals exhaustive ML", ml_trials, vit_ok);
    p.max_error("Viterbi metric vs exhaustive log-likelihood", metric_err, 1e-9);
    p.equal("SOVA hard output equals Viterbi", ml_trials, sova_ok);
    p.equal("SOVA |L| >= max-log |L| with matching sign", ml_trials, bound_ok);
}

pub fn decoder_oracle_suite(p: &mut Probe) {
    suite(p, ReliabilityRule::Corrected);
}

pub fn decoder_oracle_suite_zero_init(p: &mut Probe) {
    suite(p, ReliabilityRule::ZeroInitialized);
}

/// Top row of the SOVA reliability figure for state S1 after a merge, oldest
/// position first, as the symbolic entries `L[t-k]` (carried from S0),
/// `min(D,L[t-k])` and `inf`.
pub const FIGURE_ROW: [&str; 6] = ["L[t-6]", "min(D,L[t-5])", "L[t-4]", "min(D,L[t-3])", "L[t-2]", "inf"];

fn eval_entry(entry: &str, delta: f64, prev: &[f64; 6]) -> Option<f64> {
    let pos = |s: &str| -> Option<usize> {
        let k: usize = s.strip_prefix("L[t-")?.strip_suffix(']')?.parse().ok()?;
        6usize.checked_sub(k)
    };
    if entry == "inf" {
        return Some(f64::INFINITY);
    }
    if let Some(inner) = entry.strip_prefix("min(D,").and_then(|s| s.strip_suffix(')')) {
        return Some(delta.min(prev[pos(inner)?]));
    }
    pos(entry).map(|i| prev[i])
}

fn figure_row_check(p: &mut Probe, rule: ReliabilityRule) {
    // S0's reliabilities for positions t-6 ..= t-1; the newest is infinite by definition.
    let prev = [5.0, 1.0, 7.0, 3.5, 4.0, f64::INFINITY];
    let differs = [false, true, false, true, false, false];
    let delta = 2.0;
    let row: Vec<f64> = (0..6).map(|i| reliability_update(rule, delta, prev[i], differs[i])).collect();
    for (i, entry) in FIGURE_ROW.iter().enumerate() {
        let want = eval_entry(entry, delta, &prev);
        p.holds(format!("entry parses: {entry}"), want.is_some());
        p.equal(format!("position t-{} ({entry})", 6 - i), format!("{:?}", want.unwrap_or(f64::NAN)), format!("{:?}", row[i]));
    }
}

pub fn figure_row(p: &mut Probe) {
    figure_row_check(p, ReliabilityRule::Corrected);
}

pub fn figure_row_unconditional(p: &mut Probe) {
    figure_row_check(p, ReliabilityRule::Unconditional);
}

fn factorization_check(p: &mut Probe, with_a: bool) {
    let mut errs = Vec::new();
    for i in 1..=99 {
        let pp = f64::from(i) / 100.0;
        for f in [AprioriFactor::from_probability(pp), AprioriFactor::from_llr(apriori_llr(pp))] {
            let a = if with_a { f.a } else { 1.0 };
            errs.push((a * f.half_exp - pp).abs());
            errs.push((a / f.half_exp - (1.0 - pp)).abs());
            if with_a {
                errs.push((f.probability(1.0) - pp).abs());
                errs.push((f.probability(-1.0) - (1.0 - pp)).abs());
            }
        }
    }
    p.max_error("A e^(b L_a/2) vs P(U=b) over P+ = 0.01..0.99", errs, 1e-12);
}

pub fn apriori_factorization(p: &mut Probe) {
    factorization_check(p, true);
}

pub fn apriori_factorization_without_a(p: &mut Probe) {
    factorization_check(p, false);
}

/// Exact two-decimal fixed point, so max-log arithmetic has no rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Centi(pub i64);

impl Sub for Centi {
    type Output = Centi;

    fn sub(self, o: Centi) -> Centi {
        Centi(self.0 - o.0)
    }
}

impl std::fmt::Display for Centi {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "+" };
        write!(f, "{sign}{}.{:02}", self.0.abs() / 100, self.0.abs() % 100)
    }
}

fn centi(v: &[i64]) -> Vec<Centi> {
    v.iter().map(|&x| Centi(x)).collect()
}

pub fn maxlog_beta(p: &mut Probe) {
    let b0 = max_of(&centi(&[100, 330])).expect("nonempty");
    let b1 = max_of(&centi(&[200, 230])).expect("nonempty");
    p.equal("beta*_1(S0) = max(1.00, 3.30)", "+3.30".to_string(), b0.to_string());
    p.equal("beta*_1(S1) = max(2.00, 2.30)", "+2.30".to_string(), b1.to_string());
}

pub fn maxlog_lvalues(p: &mut Probe) {
    let l0 = max_log_l_value(&centi(&[275]), &centi(&[285])).expect("nonempty");
    let l1 = max_log_l_value(&centi(&[245, 285]), &centi(&[55, 275])).expect("nonempty");
    p.equal("L(u0) = (2.75) - (2.85)", "-0.10".to_string(), l0.to_string());
    p.equal("L(u1) = max(2.45, 2.85) - max(0.55, 2.75)", "+0.10".to_string(), l1.to_string());
}

