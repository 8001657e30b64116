//! Reproducible Monte-Carlo BER simulation for BPSK over AWGN or a BSC.
//!
//! Every trial draws from its own ChaCha8 stream: the key is derived from the
//! master seed and the stream id is `(point index << 40) | trial index`. A
//! trial's outcome therefore depends only on `(seed, point, trial)`, and any
//! execution order or thread count gives the same totals.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::blockcode::LinearBlockCode;
use crate::conv::{ConvEncoder, Trellis};
use crate::math::{cos, ln, sqrt};
use crate::soft::{bpsk_symbol, viterbi, Observation};
use crate::{invalid, Result};

/// Trials are grouped into batches of this size; the early-stop rule is only
/// evaluated between batches.
pub const BATCH_TRIALS: u64 = 1024;

const MAX_TRIALS: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    /// Grid values are `Eb/N0` in dB.
    Awgn,
    /// Grid values are crossover probabilities.
    Bsc,
}

/// Code and decoder under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimCode {
    /// One bit per trial, sign / bit decision.
    Uncoded,
    /// (7,4) Hamming; soft ML on AWGN, hard ML on the BSC.
    Hamming74,
    /// The 4-state (7,5) encoder, terminated, Viterbi decoded.
    Conv75 { info_bits: usize },
}

impl SimCode {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Uncoded => "uncoded",
            Self::Hamming74 => "hamming74",
            Self::Conv75 { .. } => "conv75",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub channel: ChannelKind,
    pub points: Vec<f64>,
    pub code: SimCode,
    /// Maximum trials (frames) per point.
    pub trials: u64,
    /// Stop a point once this many frame errors have been seen.
    pub target_frame_errors: Option<u64>,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(channel: ChannelKind, code: SimCode, points: Vec<f64>, trials: u64, seed: u64) -> Self {
        Self {
            channel,
            points,
            code,
            trials,
            target_frame_errors: Some(100),
            seed,
        }
    }

    pub fn without_early_stop(mut self) -> Self {
        self.target_frame_errors = None;
        self
    }
}

/// Error counts accumulated over a set of trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub bit_errors: u64,
    pub bits: u64,
    pub frame_errors: u64,
    pub trials: u64,
}

impl Tally {
    pub fn merge(self, o: Self) -> Self {
        Self {
            bit_errors: self.bit_errors + o.bit_errors,
            bits: self.bits + o.bits,
            frame_errors: self.frame_errors + o.frame_errors,
            trials: self.trials + o.trials,
        }
    }
}

/// One row of a BER curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerRow {
    pub x: f64,
    pub ber: f64,
    pub frame_errors: u64,
    pub trials: u64,
    /// Binomial standard error `sqrt(ber (1 - ber) / bits)`.
    pub stderr: f64,
    pub bit_errors: u64,
    pub bits: u64,
}

impl BerRow {
    fn from_tally(x: f64, t: Tally) -> Self {
        let ber = if t.bits == 0 { 0.0 } else { t.bit_errors as f64 / t.bits as f64 };
        let stderr = if t.bits == 0 { 0.0 } else { sqrt(ber * (1.0 - ber) / t.bits as f64) };
        Self {
            x,
            ber,
            frame_errors: t.frame_errors,
            trials: t.trials,
            stderr,
            bit_errors: t.bit_errors,
            bits: t.bits,
        }
    }
}

/// Uniform draw in `(0, 1]` from the top 53 bits.
fn uniform_open0(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Box-Muller standard normal pair.
pub fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1 = uniform_open0(rng);
    let u2 = uniform_open0(rng);
    let r = sqrt(-2.0 * ln(u1));
    let th = 2.0 * core::f64::consts::PI * u2;
    (r * cos(th), r * libm::sin(th))
}

/// Fills `out` with `N(0, sigma^2)` samples.
pub fn gaussian_fill(rng: &mut ChaCha8Rng, sigma: f64, out: &mut [f64]) {
    for chunk in out.chunks_mut(2) {
        let (a, b) = gaussian_pair(rng);
        chunk[0] = sigma * a;
        if let Some(s) = chunk.get_mut(1) {
            *s = sigma * b;
        }
    }
}

/// Stream for one trial.
pub fn trial_rng(seed: u64, point: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((point as u64) << 40) | trial);
    rng
}

enum Machinery {
    Uncoded,
    Block(LinearBlockCode),
    Conv { encoder: ConvEncoder, trellis: Trellis },
}

/// A configured simulation.
pub struct Simulator {
    cfg: SimConfig,
    machinery: Machinery,
    rate: f64,
}

impl Simulator {
    pub fn new(cfg: SimConfig) -> Result<Self> {
        if cfg.trials == 0 {
            return Err(invalid("zero trials"));
        }
        if cfg.trials > MAX_TRIALS {
            return Err(invalid("too many trials per point"));
        }
        if cfg.target_frame_errors == Some(0) {
            return Err(invalid("target frame errors must be positive"));
        }
        if cfg.channel == ChannelKind::Bsc && cfg.points.iter().any(|p| !(0.0..=0.5).contains(p)) {
            return Err(invalid("crossover probabilities must lie in [0, 1/2]"));
        }
        let (machinery, rate) = match cfg.code {
            SimCode::Uncoded => (Machinery::Uncoded, 1.0),
            SimCode::Hamming74 => (Machinery::Block(LinearBlockCode::hamming74()), 4.0 / 7.0),
            SimCode::Conv75 { info_bits } => {
                if info_bits == 0 {
                    return Err(invalid("frame must carry information bits"));
                }
                let encoder = ConvEncoder::from_octal(1, 2, &["7", "5"])?;
                let trellis = Trellis::terminated(&encoder, info_bits);
                let rate = info_bits as f64 / trellis.code_len() as f64;
                (Machinery::Conv { encoder, trellis }, rate)
            }
        };
        Ok(Self { cfg, machinery, rate })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    /// Information bits per transmitted bit, counting termination.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Simulate one frame.
    pub fn trial(&self, point: usize, trial: u64) -> Tally {
        let mut rng = trial_rng(self.cfg.seed, point, trial);
        let x = self.cfg.points[point];
        let info_len = match &self.machinery {
            Machinery::Uncoded => 1,
            Machinery::Block(c) => c.k(),
            Machinery::Conv { trellis, .. } => trellis.info_len(),
        };
        let info: Vec<u8> = (0..info_len)
            .map(|_| (rng.next_u32() & 1) as u8)
            .collect();
        let code = match &self.machinery {
            Machinery::Uncoded => info.clone(),
            Machinery::Block(c) => c.encode(&info).expect("length checked"),
            Machinery::Conv { encoder, .. } => encoder.encode(&info, true).expect("length checked"),
        };
        let decoded = match self.cfg.channel {
            ChannelKind::Awgn => {
                // Es = R Eb with Eb = 1, sigma^2 = N0 / 2.
                let es = self.rate;
                let n0 = 1.0 / crate::bounds::db_to_linear(x);
                let mut noise = vec![0.0; code.len()];
                gaussian_fill(&mut rng, sqrt(n0 / 2.0), &mut noise);
                let y: Vec<f64> = code
                    .iter()
                    .zip(&noise)
                    .map(|(&b, &z)| bpsk_symbol(b, es) + z)
                    .collect();
                self.decode_awgn(y, es, n0)
            }
            ChannelKind::Bsc => {
                let r: Vec<u8> = code
                    .iter()
                    .map(|&b| b ^ u8::from(uniform_open0(&mut rng) <= x))
                    .collect();
                self.decode_bsc(r, x)
            }
        };
        let errs = info.iter().zip(&decoded).filter(|(a, b)| a != b).count() as u64;
        Tally {
            bit_errors: errs,
            bits: info_len as u64,
            frame_errors: u64::from(errs > 0),
            trials: 1,
        }
    }

    fn decode_awgn(&self, y: Vec<f64>, es: f64, n0: f64) -> Vec<u8> {
        match &self.machinery {
            Machinery::Uncoded => y.iter().map(|&v| u8::from(v < 0.0)).collect(),
            Machinery::Block(c) => {
                let (m, _) = c.ml_decode_soft_packed(&y).expect("enumerable");
                (0..c.k()).map(|i| (m >> i & 1) as u8).collect()
            }
            Machinery::Conv { trellis, .. } => {
                let obs = Observation::awgn(y, es, n0).expect("positive parameters");
                viterbi(&obs, trellis).expect("terminated trellis")
            }
        }
    }

    fn decode_bsc(&self, r: Vec<u8>, p: f64) -> Vec<u8> {
        match &self.machinery {
            Machinery::Uncoded => r,
            Machinery::Block(c) => {
                let packed = r.iter().enumerate().fold(0u64, |a, (i, &b)| a | u64::from(b) << i);
                let (m, _) = c.ml_decode_hard_packed(packed).expect("enumerable");
                (0..c.k()).map(|i| (m >> i & 1) as u8).collect()
            }
            Machinery::Conv { trellis, .. } => {
                let obs = Observation::bsc(r, p).expect("validated");
                viterbi(&obs, trellis).expect("terminated trellis")
            }
        }
    }

    /// Sum of trials over `range` in index order.
    pub fn run_batch(&self, point: usize, range: Range<u64>) -> Tally {
        range.fold(Tally::default(), |acc, t| acc.merge(self.trial(point, t)))
    }

    /// Run every point, handing each batch of trial indices to `batch`.
    /// `batch` may evaluate the trials in any order or in parallel; it must
    /// return their exact total.
    pub fn run_with<F>(&self, batch: F) -> Vec<BerRow>
    where
        F: Fn(&Self, usize, Range<u64>) -> Tally,
    {
        (0..self.cfg.points.len())
            .map(|p| {
                let mut total = Tally::default();
                let mut next = 0;
                while next < self.cfg.trials {
                    let end = (next + BATCH_TRIALS).min(self.cfg.trials);
                    total = total.merge(batch(self, p, next..end));
                    next = end;
                    if self.cfg.target_frame_errors.is_some_and(|t| total.frame_errors >= t) {
                        break;
                    }
                }
                BerRow::from_tally(self.cfg.points[p], total)
            })
            .collect()
    }

    /// Single-threaded run.
    pub fn run(&self) -> Vec<BerRow> {
        self.run_with(|s, p, r| s.run_batch(p, r))
    }
}

/// Convenience wrapper: build and run serially.
pub fn run_ber(cfg: SimConfig) -> Result<Vec<BerRow>> {
    Ok(Simulator::new(cfg)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_rejected() {
        let cfg = SimConfig::new(ChannelKind::Awgn, SimCode::Uncoded, vec![0.0], 0, 1);
        assert!(run_ber(cfg).is_err());
    }

    #[test]
    fn noiseless_bsc_has_no_errors() {
        for code in [SimCode::Uncoded, SimCode::Hamming74, SimCode::Conv75 { info_bits: 20 }] {
            let cfg = SimConfig::new(ChannelKind::Bsc, code, vec![0.0], 500, 9);
            let rows = run_ber(cfg).unwrap();
            assert_eq!(rows[0].ber, 0.0);
            assert_eq!(rows[0].trials, 500);
        }
    }

    #[test]
    fn trials_are_order_independent() {
        let cfg = SimConfig::new(ChannelKind::Awgn, SimCode::Hamming74, vec![1.0], 3000, 5);
        let sim = Simulator::new(cfg).unwrap();
        let forward = sim.run();
        let reversed = sim.run_with(|s, p, r| {
            r.rev().fold(Tally::default(), |acc, t| acc.merge(s.trial(p, t)))
        });
        assert_eq!(forward, reversed);
    }

    #[test]
    fn early_stop_at_batch_boundary() {
        let cfg = SimConfig::new(ChannelKind::Bsc, SimCode::Uncoded, vec![0.5], 100_000, 3);
        let rows = run_ber(cfg).unwrap();
        assert_eq!(rows[0].trials, BATCH_TRIALS);
    }

    #[test]
    fn noise_moments() {
        let mut rng = trial_rng(11, 0, 0);
        let n = 200_000;
        let mut v = vec![0.0; n];
        gaussian_fill(&mut rng, 0.5, &mut v);
        let mean = v.iter().sum::<f64>() / n as f64;
        let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 5.0 * 0.5 / (n as f64).sqrt());
        assert!((var - 0.25).abs() < 0.01 * 0.25 * 2.0);
    }
}
