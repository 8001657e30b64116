use alloc::vec::Vec;

use crate::math::{ln, sqrt};
use crate::{invalid, Result};

/// BPSK mapping: bit 0 -> `+√Es`, bit 1 -> `-√Es`.
pub fn bpsk_symbol(bit: u8, es: f64) -> f64 {
    if bit & 1 == 0 {
        sqrt(es)
    } else {
        -sqrt(es)
    }
}

/// Squared Euclidean distance `(y - s(v))^2` between a received sample and the
/// BPSK image of code bit `v`. The AWGN log-density `ln p(y | v)` equals
/// `-branch_metric / N0` plus a term that does not depend on `v`.
pub fn branch_metric(y: f64, v: u8, es: f64) -> f64 {
    let d = y - bpsk_symbol(v, es);
    d * d
}

/// What the decoder sees at its input.
///
/// AWGN observations are real samples and are scored with probability
/// *densities*; BSC observations are hard bits and are scored with
/// probabilities.
#[derive(Debug, Clone, PartialEq)]
pub enum Observation {
    Awgn { samples: Vec<f64>, es: f64, n0: f64 },
    Bsc { bits: Vec<u8>, p: f64 },
}

impl Observation {
    pub fn awgn(samples: Vec<f64>, es: f64, n0: f64) -> Result<Self> {
        if !(es > 0.0 && n0 > 0.0) {
            return Err(invalid("Es and N0 must be positive"));
        }
        Ok(Self::Awgn { samples, es, n0 })
    }

    pub fn bsc(bits: Vec<u8>, p: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&p) {
            return Err(invalid("crossover probability must lie in [0, 1/2]"));
        }
        Ok(Self::Bsc { bits, p })
    }

    /// Noise-free observation of a codeword.
    pub fn noiseless_awgn(codeword: &[u8], es: f64, n0: f64) -> Result<Self> {
        Self::awgn(codeword.iter().map(|&b| bpsk_symbol(b, es)).collect(), es, n0)
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Awgn { samples, .. } => samples.len(),
            Self::Bsc { bits, .. } => bits.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Distance-like cost of code bit `v` at position `i`: squared Euclidean
    /// distance for AWGN, Hamming distance for BSC. Smaller is more likely.
    pub fn cost(&self, i: usize, v: u8) -> f64 {
        match self {
            Self::Awgn { samples, es, .. } => branch_metric(samples[i], v, *es),
            Self::Bsc { bits, .. } => f64::from((bits[i] ^ v) & 1),
        }
    }

    /// Nats of log-likelihood per unit of [`Self::cost`]: `1/N0` for AWGN,
    /// `ln((1-p)/p)` for BSC.
    pub fn nats_per_cost(&self) -> f64 {
        match self {
            Self::Awgn { n0, .. } => 1.0 / n0,
            Self::Bsc { p, .. } => ln((1.0 - p) / p),
        }
    }

    /// `ln p(r_i | v)` for AWGN (a density) or `ln P(r_i | v)` for BSC.
    pub fn log_likelihood(&self, i: usize, v: u8) -> f64 {
        match self {
            Self::Awgn { n0, .. } => {
                -0.5 * ln(core::f64::consts::PI * n0) - self.cost(i, v) / n0
            }
            Self::Bsc { bits, p } => {
                if (bits[i] ^ v) & 1 == 1 {
                    ln(*p)
                } else {
                    ln(1.0 - p)
                }
            }
        }
    }

    /// Channel L-value `ln[p(r_i | v=0) / p(r_i | v=1)]`.
    pub fn channel_llr(&self, i: usize) -> f64 {
        match self {
            Self::Awgn { samples, es, n0 } => 4.0 * sqrt(*es) * samples[i] / n0,
            Self::Bsc { bits, p } => {
                let l = ln((1.0 - p) / p);
                if bits[i] & 1 == 0 {
                    l
                } else {
                    -l
                }
            }
        }
    }
}
