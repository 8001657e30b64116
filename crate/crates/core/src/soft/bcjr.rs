//! BCJR a-posteriori decoding in probability, log and max-log form.

use alloc::vec;
use alloc::vec::Vec;

use super::channel::Observation;
use super::lvalue::{bipolar, combine, AprioriFactor, LlrSequence, MapMode};
use crate::conv::Trellis;
use crate::math::{exp, ln};
use crate::{Error, Result};

/// A-posteriori decoder output, one entry per information bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftOutput {
    pub a_priori: LlrSequence,
    pub a_posteriori: LlrSequence,
    /// `L - La - Lc·y` at positions with a systematic code bit, else `L - La`.
    pub extrinsic: LlrSequence,
}

impl SoftOutput {
    pub fn hard_decisions(&self) -> Vec<u8> {
        self.a_posteriori.hard_decisions()
    }
}

fn branch_log_gamma(obs: &Observation, la: &[f64], input: u32, output: u64, code_bits: usize, cpos: usize) -> f64 {
    let chan: f64 = (0..code_bits)
        .map(|j| obs.log_likelihood(cpos + j, (output >> j & 1) as u8))
        .sum();
    let prior: f64 = la
        .iter()
        .enumerate()
        .map(|(i, &l)| AprioriFactor::log_probability(l, bipolar((input >> i & 1) as u8)))
        .sum();
    chan + prior
}

fn branch_gamma(obs: &Observation, la: &[f64], input: u32, output: u64, code_bits: usize, cpos: usize) -> f64 {
    let chan: f64 = (0..code_bits)
        .map(|j| exp(obs.log_likelihood(cpos + j, (output >> j & 1) as u8)))
        .product();
    let prior: f64 = la
        .iter()
        .enumerate()
        .map(|(i, &l)| AprioriFactor::from_llr(l).probability(bipolar((input >> i & 1) as u8)))
        .product();
    chan * prior
}

/// Per-bit a-posteriori L-values `ln[P(u=+1 | r) / P(u=-1 | r)]`.
///
/// `Probability` mode multiplies unnormalised probabilities and reports
/// [`Error::Underflow`] when they vanish; use `Log` for long blocks.
pub fn bcjr(obs: &Observation, trellis: &Trellis, apriori: &LlrSequence, mode: MapMode) -> Result<SoftOutput> {
    if obs.len() != trellis.code_len() {
        return Err(Error::LengthMismatch {
            expected: trellis.code_len(),
            actual: obs.len(),
        });
    }
    if apriori.len() != trellis.info_len() {
        return Err(Error::LengthMismatch {
            expected: trellis.info_len(),
            actual: apriori.len(),
        });
    }
    let l = match mode {
        MapMode::Probability => app_probability(obs, trellis, apriori)?,
        _ => app_log(obs, trellis, apriori, mode),
    };
    let mut extrinsic = Vec::with_capacity(l.len());
    for (sec, (ipos, cpos)) in trellis.sections().iter().zip(trellis.offsets()) {
        for i in 0..sec.info_bits {
            let mut e = l[ipos + i] - apriori[ipos + i];
            if let Some(j) = sec.systematic[i] {
                e -= obs.channel_llr(cpos + j);
            }
            extrinsic.push(e);
        }
    }
    Ok(SoftOutput {
        a_priori: apriori.clone(),
        a_posteriori: LlrSequence::new(l),
        extrinsic: LlrSequence::new(extrinsic),
    })
}

fn app_log(obs: &Observation, trellis: &Trellis, apriori: &LlrSequence, mode: MapMode) -> Vec<f64> {
    let ninf = f64::NEG_INFINITY;
    let states = trellis.num_states();
    let depth = trellis.sections().len();
    let offsets = trellis.offsets();
    let gammas: Vec<Vec<f64>> = trellis
        .sections()
        .iter()
        .zip(&offsets)
        .map(|(sec, &(ipos, cpos))| {
            let la = &apriori.values()[ipos..ipos + sec.info_bits];
            sec.branches
                .iter()
                .map(|b| branch_log_gamma(obs, la, b.input, b.output, sec.code_bits, cpos))
                .collect()
        })
        .collect();
    let mut alpha = vec![vec![ninf; states]; depth + 1];
    alpha[0][trellis.start() as usize] = 0.0;
    for (t, sec) in trellis.sections().iter().enumerate() {
        for (b, &g) in sec.branches.iter().zip(&gammas[t]) {
            let a = alpha[t][b.from as usize];
            if a > ninf {
                let slot = &mut alpha[t + 1][b.to as usize];
                *slot = combine(mode, *slot, a + g);
            }
        }
    }
    let mut beta = vec![vec![ninf; states]; depth + 1];
    match trellis.end() {
        Some(e) => beta[depth][e as usize] = 0.0,
        None => beta[depth].iter_mut().for_each(|b| *b = 0.0),
    }
    for (t, sec) in trellis.sections().iter().enumerate().rev() {
        for (b, &g) in sec.branches.iter().zip(&gammas[t]) {
            let nb = beta[t + 1][b.to as usize];
            if nb > ninf {
                let slot = &mut beta[t][b.from as usize];
                *slot = combine(mode, *slot, nb + g);
            }
        }
    }
    let mut l = vec![0.0; trellis.info_len()];
    for (t, (sec, &(ipos, _))) in trellis.sections().iter().zip(&offsets).enumerate() {
        let mut plus = vec![ninf; sec.info_bits];
        let mut minus = vec![ninf; sec.info_bits];
        for (b, &g) in sec.branches.iter().zip(&gammas[t]) {
            let m = alpha[t][b.from as usize] + g + beta[t + 1][b.to as usize];
            if m == ninf {
                continue;
            }
            for i in 0..sec.info_bits {
                let slot = if b.input >> i & 1 == 0 { &mut plus[i] } else { &mut minus[i] };
                *slot = combine(mode, *slot, m);
            }
        }
        for i in 0..sec.info_bits {
            l[ipos + i] = plus[i] - minus[i];
        }
    }
    l
}

fn app_probability(obs: &Observation, trellis: &Trellis, apriori: &LlrSequence) -> Result<Vec<f64>> {
    let states = trellis.num_states();
    let depth = trellis.sections().len();
    let offsets = trellis.offsets();
    let gammas: Vec<Vec<f64>> = trellis
        .sections()
        .iter()
        .zip(&offsets)
        .map(|(sec, &(ipos, cpos))| {
            let la = &apriori.values()[ipos..ipos + sec.info_bits];
            sec.branches
                .iter()
                .map(|b| branch_gamma(obs, la, b.input, b.output, sec.code_bits, cpos))
                .collect()
        })
        .collect();
    let mut alpha = vec![vec![0.0; states]; depth + 1];
    alpha[0][trellis.start() as usize] = 1.0;
    for (t, sec) in trellis.sections().iter().enumerate() {
        for (b, &g) in sec.branches.iter().zip(&gammas[t]) {
            alpha[t + 1][b.to as usize] += alpha[t][b.from as usize] * g;
        }
    }
    let mut beta = vec![vec![0.0; states]; depth + 1];
    match trellis.end() {
        Some(e) => beta[depth][e as usize] = 1.0,
        None => beta[depth].iter_mut().for_each(|b| *b = 1.0),
    }
    for (t, sec) in trellis.sections().iter().enumerate().rev() {
        for (b, &g) in sec.branches.iter().zip(&gammas[t]) {
            beta[t][b.from as usize] += beta[t + 1][b.to as usize] * g;
        }
    }
    let total: f64 = alpha[depth]
        .iter()
        .zip(&beta[depth])
        .map(|(a, b)| a * b)
        .sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Underflow);
    }
    let mut l = vec![0.0; trellis.info_len()];
    for (t, (sec, &(ipos, _))) in trellis.sections().iter().zip(&offsets).enumerate() {
        let mut plus = vec![0.0; sec.info_bits];
        let mut minus = vec![0.0; sec.info_bits];
        for (b, &g) in sec.branches.iter().zip(&gammas[t]) {
            let m = alpha[t][b.from as usize] * g * beta[t + 1][b.to as usize];
            for i in 0..sec.info_bits {
                if b.input >> i & 1 == 0 {
                    plus[i] += m;
                } else {
                    minus[i] += m;
                }
            }
        }
        for i in 0..sec.info_bits {
            l[ipos + i] = ln(plus[i] / minus[i]);
        }
    }
    Ok(l)
}
