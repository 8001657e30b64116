//! Brute-force references shared by the checks.

use fecverify_core::conv::{ConvEncoder, Trellis};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_encoder(rng: &mut ChaCha8Rng) -> ConvEncoder {
    loop {
        let n_out = rng.random_range(2..=3);
        let mem = rng.random_range(1..=3u32);
        let gens: Vec<u64> = (0..n_out).map(|_| rng.random_range(1..1u64 << (mem + 1))).collect();
        if let Ok(e) = ConvEncoder::rate_one_over(&gens) {
            return e;
        }
    }
}

pub fn logsumexp(v: &[f64]) -> f64 {
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// A terminated trellis, its full codebook and one noisy AWGN observation.
pub struct Instance {
    pub trellis: Trellis,
    pub book: Vec<(Vec<u8>, Vec<u8>)>,
    pub y: Vec<f64>,
    pub es: f64,
    pub n0: f64,
    pub la: Vec<f64>,
}

impl Instance {
    pub fn random(rng: &mut ChaCha8Rng, max_h: usize, with_priors: bool) -> Self {
        let enc = random_encoder(rng);
        let h = rng.random_range(1..=max_h);
        Self::for_encoder(rng, &enc, h, with_priors)
    }

    pub fn for_encoder(rng: &mut ChaCha8Rng, enc: &ConvEncoder, h: usize, with_priors: bool) -> Self {
        let trellis = Trellis::terminated(enc, h);
        let book: Vec<(Vec<u8>, Vec<u8>)> = (0u32..1 << h)
            .map(|m| {
                let u: Vec<u8> = (0..h).map(|i| (m >> i & 1) as u8).collect();
                let c = enc.encode(&u, true).expect("length matches");
                (u, c)
            })
            .collect();
        let es: f64 = rng.random_range(0.3..2.0);
        let n0: f64 = rng.random_range(0.3..3.0);
        let truth = book[rng.random_range(0..book.len())].1.clone();
        let sigma = (n0 / 2.0).sqrt();
        let y = truth
            .iter()
            .map(|&b| if b == 0 { es.sqrt() } else { -es.sqrt() } + sigma * gaussian(rng))
            .collect();
        let la = (0..h)
            .map(|_| if with_priors { rng.random_range(-3.0..3.0) } else { 0.0 })
            .collect();
        Self { trellis, book, y, es, n0, la }
    }

    pub fn h(&self) -> usize {
        self.la.len()
    }

    /// `ln p(y | c) + ln P(u)` up to terms shared by all messages.
    pub fn log_weight(&self, u: &[u8], c: &[u8]) -> f64 {
        let s = self.es.sqrt();
        let chan: f64 = self
            .y
            .iter()
            .zip(c)
            .map(|(&y, &b)| {
                let x = if b == 0 { s } else { -s };
                -(y - x) * (y - x) / self.n0
            })
            .sum();
        let prior: f64 = u
            .iter()
            .zip(&self.la)
            .map(|(&b, &l)| {
                let p_plus = 1.0 / (1.0 + (-l).exp());
                if b == 0 {
                    p_plus.ln()
                } else {
                    (1.0 - p_plus).ln()
                }
            })
            .sum();
        chan + prior
    }

    pub fn weights(&self) -> Vec<f64> {
        self.book.iter().map(|(u, c)| self.log_weight(u, c)).collect()
    }

    /// Exact a-posteriori L-value of information bit `l`.
    pub fn app_llr(&self, weights: &[f64], l: usize) -> f64 {
        let split = |bit: u8| -> Vec<f64> {
            self.book
                .iter()
                .zip(weights)
                .filter(|((u, _), _)| u[l] == bit)
                .map(|(_, &w)| w)
                .collect()
        };
        logsumexp(&split(0)) - logsumexp(&split(1))
    }

    /// Max-log L-value: best weight with `u_l = 0` minus best with `u_l = 1`.
    pub fn maxlog_llr(&self, weights: &[f64], l: usize) -> f64 {
        let best = |bit: u8| {
            self.book
                .iter()
                .zip(weights)
                .filter(|((u, _), _)| u[l] == bit)
                .map(|(_, &w)| w)
                .fold(f64::NEG_INFINITY, f64::max)
        };
        best(0) - best(1)
    }

    /// Message of the largest weight, first in lexicographic order on ties.
    pub fn best(&self, weights: &[f64]) -> &[u8] {
        let mut idx = 0;
        for i in 1..weights.len() {
            if weights[i] > weights[idx] || weights[i] == weights[idx] && self.book[i].0 < self.book[idx].0 {
                idx = i;
            }
        }
        &self.book[idx].0
    }
}

/// Bitwise posteriors `P(c_l = 1 | r)` over every word that satisfies `is_codeword`.
pub fn bitwise_map(n: usize, llr: &[f64], is_codeword: impl Fn(&[u8]) -> bool) -> Vec<f64> {
    let mut num = vec![0.0; n];
    let mut total = 0.0;
    for w in 0u32..1 << n {
        let c: Vec<u8> = (0..n).map(|i| (w >> i & 1) as u8).collect();
        if !is_codeword(&c) {
            continue;
        }
        let p: f64 = c
            .iter()
            .zip(llr)
            .map(|(&b, &l)| {
                let p0 = 1.0 / (1.0 + (-l).exp());
                if b == 0 {
                    p0
                } else {
                    1.0 - p0
                }
            })
            .product();
        total += p;
        for i in 0..n {
            if c[i] == 1 {
                num[i] += p;
            }
        }
    }
    num.iter().map(|x| x / total).collect()
}
