//! Sum-product decoding of LDPC codes in the probability domain.
//!
//! Messages are `(P(b = 0), P(b = 1))` pairs. The message a node sends along
//! an edge is computed from all of its *other* edges: `B(h_j) \ {l}` for a
//! check sending to bit `l`, and the checks of bit `l` other than `j` for
//! the reverse direction.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{atanh, exp, tanh};
use crate::soft::LlrSequence;
use crate::{invalid, Result};

/// A sparse binary parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    n: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl ParityCheckMatrix {
    /// Build from row supports. Indices are sorted and must be distinct and
    /// below `n`; empty rows are rejected.
    pub fn from_rows(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut cols = vec![Vec::new(); n];
        let mut sorted = Vec::with_capacity(rows.len());
        for (j, mut row) in rows.into_iter().enumerate() {
            if row.is_empty() {
                return Err(invalid(alloc::format!("row {j} is empty")));
            }
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(alloc::format!("row {j} repeats a column")));
            }
            if let Some(&c) = row.last().filter(|&&c| c >= n) {
                return Err(invalid(alloc::format!("row {j} has column {c} >= {n}")));
            }
            for &l in &row {
                cols[l].push(j);
            }
            sorted.push(row);
        }
        Ok(Self {
            n,
            rows: sorted,
            cols,
        })
    }

    pub fn from_dense(h: &[Vec<u8>]) -> Result<Self> {
        let n = h.first().map_or(0, Vec::len);
        if h.iter().any(|r| r.len() != n) {
            return Err(invalid("rows of unequal length"));
        }
        let rows = h
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &b)| b & 1 == 1).map(|(i, _)| i).collect())
            .collect();
        Self::from_rows(n, rows)
    }

    /// From packed rows as produced by
    /// [`LinearBlockCode::parity_check_rows`](crate::blockcode::LinearBlockCode::parity_check_rows).
    pub fn from_packed(n: usize, rows: &[u64]) -> Result<Self> {
        Self::from_rows(
            n,
            rows.iter()
                .map(|&r| (0..n).filter(|&i| r >> i & 1 == 1).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_checks(&self) -> usize {
        self.rows.len()
    }

    /// `B(h_j)`, the columns checked by row `j`.
    pub fn row(&self, j: usize) -> &[usize] {
        &self.rows[j]
    }

    /// The rows that check column `l`.
    pub fn column(&self, l: usize) -> &[usize] {
        &self.cols[l]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn syndrome(&self, bits: &[u8]) -> Vec<u8> {
        self.rows
            .iter()
            .map(|r| r.iter().fold(0, |acc, &l| acc ^ (bits[l] & 1)))
            .collect()
    }

    pub fn is_codeword(&self, bits: &[u8]) -> bool {
        self.syndrome(bits).iter().all(|&s| s == 0)
    }
}

/// `σ^x = Σ_{b : b_1 + ... + b_m = x mod 2} q_1^{b_1} ... q_m^{b_m}`.
///
/// Evaluated by the product recurrence on `S = σ^0 + σ^1` and
/// `D = σ^0 - σ^1`, which multiply by `q^0 + q^1` and `q^0 - q^1` per input.
/// With no inputs, `σ^0 = 1` and `σ^1 = 0`.
pub fn check_node_update(q: &[(f64, f64)], x: u8) -> f64 {
    let (s, d) = q
        .iter()
        .fold((1.0, 1.0), |(s, d), &(q0, q1)| (s * (q0 + q1), d * (q0 - q1)));
    if x & 1 == 0 {
        (s + d) / 2.0
    } else {
        (s - d) / 2.0
    }
}

/// The same sum by direct enumeration of all `2^m` tuples.
pub fn check_node_update_enumerated(q: &[(f64, f64)], x: u8) -> f64 {
    assert!(q.len() < 32, "enumeration limited to m < 32");
    (0u32..1 << q.len())
        .filter(|t| (t.count_ones() & 1) as u8 == x & 1)
        .map(|t| {
            q.iter()
                .enumerate()
                .map(|(k, &(q0, q1))| if t >> k & 1 == 1 { q1 } else { q0 })
                .product::<f64>()
        })
        .sum()
}

/// LLR-domain counterpart: `2 atanh(Π tanh(L_k / 2))` with `L = ln(q^0/q^1)`.
pub fn check_node_llr(llrs: &[f64]) -> f64 {
    2.0 * atanh(llrs.iter().map(|&l| tanh(l / 2.0)).product())
}

fn normalize(p0: f64, p1: f64) -> (f64, f64) {
    let s = p0 + p1;
    if s > 0.0 {
        (p0 / s, p1 / s)
    } else {
        (0.5, 0.5)
    }
}

fn llr_to_pair(l: f64) -> (f64, f64) {
    if l >= 0.0 {
        let e = exp(-l);
        (1.0 / (1.0 + e), e / (1.0 + e))
    } else {
        let e = exp(l);
        (e / (1.0 + e), 1.0 / (1.0 + e))
    }
}

/// Result of [`sum_product_decode`].
#[derive(Debug, Clone, PartialEq)]
pub struct LdpcDecision {
    pub bits: Vec<u8>,
    pub converged: bool,
    pub iterations: usize,
    /// Normalised pseudo-posteriors `(P(0), P(1))` per bit.
    pub posteriors: Vec<(f64, f64)>,
}

/// Flooding-schedule sum-product decoder that can be stepped one iteration
/// at a time.
#[derive(Debug, Clone)]
pub struct SumProductDecoder<'h> {
    h: &'h ParityCheckMatrix,
    prior: Vec<(f64, f64)>,
    /// `q[j][k]`: bit-to-check message from bit `row(j)[k]` to check `j`.
    q: Vec<Vec<(f64, f64)>>,
    /// `sigma[j][k]`: check-to-bit message from check `j` to bit `row(j)[k]`.
    sigma: Vec<Vec<(f64, f64)>>,
    posteriors: Vec<(f64, f64)>,
    iterations: usize,
}

impl<'h> SumProductDecoder<'h> {
    pub fn new(h: &'h ParityCheckMatrix, channel_llrs: &LlrSequence) -> Result<Self> {
        if channel_llrs.len() != h.n() {
            return Err(crate::Error::LengthMismatch {
                expected: h.n(),
                actual: channel_llrs.len(),
            });
        }
        let prior: Vec<(f64, f64)> = channel_llrs.values().iter().map(|&l| llr_to_pair(l)).collect();
        let q = h
            .rows()
            .iter()
            .map(|r| r.iter().map(|&l| prior[l]).collect())
            .collect();
        let sigma = h.rows().iter().map(|r| vec![(1.0, 0.0); r.len()]).collect();
        Ok(Self {
            h,
            posteriors: prior.clone(),
            prior,
            q,
            sigma,
            iterations: 0,
        })
    }

    /// One check half-iteration followed by one bit half-iteration.
    pub fn step(&mut self) {
        let mut others = Vec::new();
        for (j, row) in self.h.rows().iter().enumerate() {
            for k in 0..row.len() {
                others.clear();
                others.extend(
                    self.q[j]
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != k)
                        .map(|(_, &m)| m),
                );
                self.sigma[j][k] = (check_node_update(&others, 0), check_node_update(&others, 1));
            }
        }
        // Position of bit l inside each row that checks it.
        let slot = |j: usize, l: usize| self.h.row(j).binary_search(&l).expect("edge");
        let mut q = self.q.clone();
        for l in 0..self.h.n() {
            let checks = self.h.column(l);
            let incoming: Vec<(f64, f64)> = checks.iter().map(|&j| self.sigma[j][slot(j, l)]).collect();
            let (p0, p1) = incoming
                .iter()
                .fold(self.prior[l], |(a, b), &(s0, s1)| (a * s0, b * s1));
            self.posteriors[l] = normalize(p0, p1);
            for (idx, &j) in checks.iter().enumerate() {
                let (m0, m1) = incoming
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != idx)
                    .fold(self.prior[l], |(a, b), (_, &(s0, s1))| (a * s0, b * s1));
                q[j][slot(j, l)] = normalize(m0, m1);
            }
        }
        self.q = q;
        self.iterations += 1;
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn posteriors(&self) -> &[(f64, f64)] {
        &self.posteriors
    }

    /// Hard decisions; an exact tie decodes to 0.
    pub fn decisions(&self) -> Vec<u8> {
        self.posteriors.iter().map(|&(p0, p1)| u8::from(p1 > p0)).collect()
    }
}

/// Run up to `max_iter` iterations, stopping as soon as the hard decisions
/// satisfy every check.
pub fn sum_product_decode(h: &ParityCheckMatrix, channel_llrs: &LlrSequence, max_iter: usize) -> Result<LdpcDecision> {
    let mut dec = SumProductDecoder::new(h, channel_llrs)?;
    let mut converged = false;
    while dec.iterations() < max_iter {
        dec.step();
        if h.is_codeword(&dec.decisions()) {
            converged = true;
            break;
        }
    }
    Ok(LdpcDecision {
        bits: dec.decisions(),
        converged,
        iterations: dec.iterations(),
        posteriors: dec.posteriors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockcode::LinearBlockCode;

    #[test]
    fn check_node_examples() {
        let q = [(0.9, 0.1), (0.8, 0.2)];
        assert!((check_node_update(&q, 0) - 0.74).abs() < 1e-15);
        assert!((check_node_update(&q, 1) - 0.26).abs() < 1e-15);
        assert!((check_node_update_enumerated(&q, 0) - 0.74).abs() < 1e-15);
        assert!((check_node_update(&[(0.3, 0.7)], 0) - 0.3).abs() < 1e-15);
        assert_eq!(check_node_update(&[], 0), 1.0);
        assert_eq!(check_node_update(&[], 1), 0.0);
        assert_eq!(check_node_update(&[(0.5, 0.5); 6], 1), 0.5);
    }

    #[test]
    fn tanh_agrees() {
        let q = [(0.9, 0.1), (0.35, 0.65), (0.7, 0.3)];
        let llrs: Vec<f64> = q.iter().map(|&(a, b): &(f64, f64)| (a / b).ln()).collect();
        let s0 = check_node_update(&q, 0);
        let s1 = check_node_update(&q, 1);
        assert!(((s0 / s1).ln() - check_node_llr(&llrs)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(ParityCheckMatrix::from_rows(3, vec![vec![0, 1], vec![]]).is_err());
        assert!(ParityCheckMatrix::from_rows(3, vec![vec![0, 3]]).is_err());
        assert!(ParityCheckMatrix::from_rows(3, vec![vec![1, 1]]).is_err());
    }

    fn hamming_h() -> ParityCheckMatrix {
        let c = LinearBlockCode::hamming74();
        ParityCheckMatrix::from_packed(7, &c.parity_check_rows().unwrap()).unwrap()
    }

    #[test]
    fn noiseless_converges_immediately() {
        let h = hamming_h();
        let cw = LinearBlockCode::hamming74().encode(&[1, 0, 1, 1]).unwrap();
        let llr = LlrSequence::new(cw.iter().map(|&b| if b == 0 { 6.0 } else { -6.0 }).collect());
        let d = sum_product_decode(&h, &llr, 20).unwrap();
        assert!(d.converged);
        assert_eq!(d.iterations, 1);
        assert_eq!(d.bits, cw);
    }

    #[test]
    fn corrects_weak_flip() {
        let h = hamming_h();
        let mut llr = vec![4.0; 7];
        llr[2] = -0.5;
        let d = sum_product_decode(&h, &LlrSequence::new(llr), 10).unwrap();
        assert!(d.converged);
        assert_eq!(d.bits, vec![0; 7]);
    }
}
