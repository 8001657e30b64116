//! Viterbi and SOVA on a shared add-compare-select engine.
//!
//! Path metrics are costs (squared Euclidean distance on AWGN, Hamming
//! distance on the BSC) and the survivor is the cheapest path into a state.
//! Exact cost ties go to the lexicographically smaller input history.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::channel::Observation;
use super::lvalue::{bipolar, LlrSequence};
use crate::conv::{Section, Trellis};
use crate::{invalid, Error, Result};

/// How SOVA reliabilities are initialised and updated at a merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReliabilityRule {
    /// New positions start at `∞`; a merge lowers position `l` to
    /// `min(Δ, L_l)` only where the competitor's bit differs.
    Corrected,
    /// As `Corrected` but the minimum is taken at every position.
    Unconditional,
    /// As `Corrected` but new positions start at 0 instead of `∞`.
    ZeroInitialized,
}

impl ReliabilityRule {
    fn initial(self) -> f64 {
        match self {
            Self::ZeroInitialized => 0.0,
            _ => f64::INFINITY,
        }
    }
}

/// One reliability update at a merge.
///
/// ```
/// use fecverify_core::soft::{reliability_update, ReliabilityRule};
/// assert_eq!(reliability_update(ReliabilityRule::Corrected, 2.0, 1.5, true), 1.5);
/// assert_eq!(reliability_update(ReliabilityRule::Corrected, 1.0, 1.5, false), 1.5);
/// assert_eq!(reliability_update(ReliabilityRule::Corrected, 1.0, f64::INFINITY, true), 1.0);
/// ```
pub fn reliability_update(rule: ReliabilityRule, delta: f64, previous: f64, differs: bool) -> f64 {
    match rule {
        ReliabilityRule::Unconditional => delta.min(previous),
        _ if differs => delta.min(previous),
        _ => previous,
    }
}

/// A decoded path.
#[derive(Debug, Clone, PartialEq)]
pub struct ViterbiPath {
    pub info: Vec<u8>,
    pub code: Vec<u8>,
    /// Total cost of the path.
    pub metric: f64,
}

/// SOVA result: hard decisions of the survivor and signed reliabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct SovaOutput {
    pub hard: Vec<u8>,
    pub reliability: Vec<f64>,
    pub llr: LlrSequence,
}

fn check_lengths(obs: &Observation, trellis: &Trellis, apriori: Option<&LlrSequence>) -> Result<()> {
    if obs.len() != trellis.code_len() {
        return Err(Error::LengthMismatch {
            expected: trellis.code_len(),
            actual: obs.len(),
        });
    }
    if let Some(la) = apriori {
        if la.len() != trellis.info_len() {
            return Err(Error::LengthMismatch {
                expected: trellis.info_len(),
                actual: la.len(),
            });
        }
    }
    Ok(())
}

fn code_cost(obs: &Observation, sec: &Section, output: u64, offset: usize) -> f64 {
    (0..sec.code_bits)
        .map(|j| obs.cost(offset + j, (output >> j & 1) as u8))
        .sum()
}

/// Cost of the information bits under the a-priori L-values, in channel cost
/// units: `-Σ x_i La_i / 2` divided by the nats carried by one unit of cost.
fn prior_cost(la: &[f64], input: u32, nats_per_cost: f64) -> f64 {
    let nats: f64 = la
        .iter()
        .enumerate()
        .map(|(i, &l)| bipolar((input >> i & 1) as u8) * l / 2.0)
        .sum();
    if nats == 0.0 {
        0.0
    } else {
        -nats / nats_per_cost
    }
}

fn cmp_history(a: &[u8], a_in: u32, b: &[u8], b_in: u32, bits: usize) -> Ordering {
    a.cmp(b).then_with(|| {
        (0..bits)
            .map(|i| (a_in >> i & 1).cmp(&(b_in >> i & 1)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

struct Survivor {
    cost: f64,
    history: Vec<u8>,
    reliability: Vec<f64>,
}

/// Shared ACS recursion. With `rule = None` no reliabilities are tracked.
fn acs(
    obs: &Observation,
    trellis: &Trellis,
    apriori: Option<&LlrSequence>,
    rule: Option<ReliabilityRule>,
) -> Result<Survivor> {
    check_lengths(obs, trellis, apriori)?;
    let scale = obs.nats_per_cost();
    let states = trellis.num_states();
    let mut cur: Vec<Option<Survivor>> = (0..states).map(|_| None).collect();
    cur[trellis.start() as usize] = Some(Survivor {
        cost: 0.0,
        history: Vec::new(),
        reliability: Vec::new(),
    });
    for (sec, (ipos, cpos)) in trellis.sections().iter().zip(trellis.offsets()) {
        let la = apriori.map_or(&[][..], |l| &l.values()[ipos..ipos + sec.info_bits]);
        // candidates[to] = (cost, from, input)
        let mut candidates: Vec<Vec<(f64, u32, u32)>> = vec![Vec::new(); states];
        for b in &sec.branches {
            if let Some(s) = &cur[b.from as usize] {
                let mut c = s.cost + code_cost(obs, sec, b.output, cpos);
                if !la.is_empty() {
                    c += prior_cost(la, b.input, scale);
                }
                candidates[b.to as usize].push((c, b.from, b.input));
            }
        }
        let mut next: Vec<Option<Survivor>> = (0..states).map(|_| None).collect();
        for (to, cands) in candidates.into_iter().enumerate() {
            let hist = |from: u32| &cur[from as usize].as_ref().expect("live").history;
            let Some(&best) = cands.iter().min_by(|x, y| {
                x.0.partial_cmp(&y.0)
                    .unwrap_or(Ordering::Equal)
                    .then_with(|| cmp_history(hist(x.1), x.2, hist(y.1), y.2, sec.info_bits))
            }) else {
                continue;
            };
            let prev = cur[best.1 as usize].as_ref().expect("live");
            let mut history = prev.history.clone();
            history.extend((0..sec.info_bits).map(|i| (best.2 >> i & 1) as u8));
            let mut reliability = Vec::new();
            if let Some(rule) = rule {
                reliability = prev.reliability.clone();
                reliability.extend(core::iter::repeat_n(rule.initial(), sec.info_bits));
                for &(c, from, input) in &cands {
                    if (c, from, input) == best {
                        continue;
                    }
                    let delta = (c - best.0) * scale;
                    let comp = hist(from);
                    for (l, r) in reliability.iter_mut().enumerate() {
                        let bit = if l < comp.len() {
                            comp[l]
                        } else {
                            (input >> (l - comp.len()) & 1) as u8
                        };
                        *r = reliability_update(rule, delta, *r, bit != history[l]);
                    }
                }
            }
            next[to] = Some(Survivor {
                cost: best.0,
                history,
                reliability,
            });
        }
        cur = next;
    }
    let winner = match trellis.end() {
        Some(e) => cur.swap_remove(e as usize),
        None => cur.into_iter().flatten().min_by(|x, y| {
            x.cost
                .partial_cmp(&y.cost)
                .unwrap_or(Ordering::Equal)
                .then_with(|| x.history.cmp(&y.history))
        }),
    };
    winner.ok_or_else(|| invalid("end state unreachable"))
}

/// Maximum-likelihood information sequence.
pub fn viterbi(obs: &Observation, trellis: &Trellis) -> Result<Vec<u8>> {
    Ok(acs(obs, trellis, None, None)?.history)
}

/// Maximum-likelihood path with its code bits and total cost.
pub fn viterbi_path(obs: &Observation, trellis: &Trellis) -> Result<ViterbiPath> {
    let s = acs(obs, trellis, None, None)?;
    let code = trellis.encode_path(&s.history)?;
    Ok(ViterbiPath {
        info: s.history,
        code,
        metric: s.cost,
    })
}

pub fn sova(obs: &Observation, trellis: &Trellis, apriori: &LlrSequence) -> Result<SovaOutput> {
    sova_with_rule(obs, trellis, apriori, ReliabilityRule::Corrected)
}

/// SOVA with an explicit reliability rule. Reliabilities are in L-value
/// units: a cost gap `Δc` between survivor and competitor becomes
/// `Δc · nats_per_cost`, which for AWGN is the correlation metric difference
/// scaled by `Lc/2`.
pub fn sova_with_rule(
    obs: &Observation,
    trellis: &Trellis,
    apriori: &LlrSequence,
    rule: ReliabilityRule,
) -> Result<SovaOutput> {
    let s = acs(obs, trellis, Some(apriori), Some(rule))?;
    let llr = s
        .history
        .iter()
        .zip(&s.reliability)
        .map(|(&u, &r)| bipolar(u) * r)
        .collect();
    Ok(SovaOutput {
        hard: s.history,
        reliability: s.reliability,
        llr: LlrSequence::new(llr),
    })
}

/// Partial path metrics along the path selected by `info`: entry `t` is the
/// sum of branch costs of sections `0..=t`.
pub fn partial_metrics(obs: &Observation, trellis: &Trellis, info: &[u8]) -> Result<Vec<f64>> {
    check_lengths(obs, trellis, None)?;
    let code = trellis.encode_path(info)?;
    let mut out = Vec::with_capacity(trellis.sections().len());
    let mut acc = 0.0;
    for (sec, (_, cpos)) in trellis.sections().iter().zip(trellis.offsets()) {
        acc += (cpos..cpos + sec.code_bits)
            .map(|i| obs.cost(i, code[i]))
            .sum::<f64>();
        out.push(acc);
    }
    Ok(out)
}
