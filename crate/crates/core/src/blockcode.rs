//! Binary linear block codes of length at most 64.
//!
//! Codewords and messages are packed into `u64`: bit `j` holds code position `j`
//! (message bit `i` for messages). The public slice-based API uses one byte per
//! bit with values 0 and 1.
//!
//! Minimum distance and ML decoding are exhaustive over all `2^k` messages and
//! refuse to run for `k > MAX_ENUMERATION_K`.

use alloc::format;
use alloc::vec::Vec;

use crate::{invalid, Error, Result};

pub const MAX_LENGTH: usize = 64;
pub const MAX_ENUMERATION_K: usize = 24;

pub(crate) fn pack(bits: &[u8]) -> u64 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (((b & 1) as u64) << i))
}

pub(crate) fn unpack(word: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| (word >> i & 1) as u8).collect()
}

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// `a` precedes `b` in lexicographic order of the bit sequences (position 0 first).
pub fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a >> diff.trailing_zeros() & 1 == 0
}

fn rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut x = r;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// A binary `(n, k)` linear code given by its generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearBlockCode {
    n: usize,
    k: usize,
    rows: Vec<u64>,
    systematic: bool,
    d_min: Option<u32>,
}

impl LinearBlockCode {
    /// Build from packed generator rows. The rows must be linearly independent.
    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self> {
        if n == 0 || n > MAX_LENGTH {
            return Err(invalid(format!("code length {n} outside 1..=64")));
        }
        if rows.is_empty() {
            return Err(invalid("generator matrix has no rows"));
        }
        if rows.iter().any(|&r| r & !mask(n) != 0) {
            return Err(invalid("generator row wider than n"));
        }
        let k = rows.len();
        let r = rank(&rows);
        if r != k {
            return Err(Error::RankDeficient { rank: r, k });
        }
        let systematic = rows
            .iter()
            .enumerate()
            .all(|(i, &row)| row & mask(k) == 1 << i);
        Ok(Self {
            n,
            k,
            rows,
            systematic,
            d_min: None,
        })
    }

    /// Build from a `k x n` 0/1 generator matrix.
    pub fn from_generator(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: bad.len(),
            });
        }
        Self::from_rows(n, rows.iter().map(|r| pack(r)).collect())
    }

    /// Systematic code `G = [I_k | P]` where `parity[i]` packs row `i` of `P`
    /// (`r = n - k` bits).
    pub fn systematic(k: usize, r: usize, parity: &[u64]) -> Result<Self> {
        if parity.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                actual: parity.len(),
            });
        }
        if k + r > MAX_LENGTH {
            return Err(invalid("code length exceeds 64"));
        }
        if parity.iter().any(|&p| r < 64 && p >> r != 0) {
            return Err(invalid("parity row wider than n - k"));
        }
        let rows = parity
            .iter()
            .enumerate()
            .map(|(i, &p)| (1u64 << i) | (p << k))
            .collect();
        Self::from_rows(k + r, rows)
    }

    /// `(n, 1)` repetition code.
    pub fn repetition(n: usize) -> Result<Self> {
        Self::from_rows(n, alloc::vec![mask(n)])
    }

    /// `(k, k)` code with no redundancy.
    pub fn identity(k: usize) -> Result<Self> {
        Self::systematic(k, 0, &alloc::vec![0; k])
    }

    /// `(k + 1, k)` even-parity code.
    pub fn single_parity_check(k: usize) -> Result<Self> {
        Self::systematic(k, 1, &alloc::vec![1; k])
    }

    /// Systematic (7, 4) Hamming code with `P` rows 110, 011, 111, 101.
    pub fn hamming74() -> Self {
        Self::systematic(4, 3, &[0b011, 0b110, 0b111, 0b101]).expect("valid Hamming generator")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn is_systematic(&self) -> bool {
        self.systematic
    }

    pub fn generator_rows(&self) -> &[u64] {
        &self.rows
    }

    /// Row `i` of the parity block `P` for systematic codes.
    pub fn parity_row(&self, i: usize) -> Result<u64> {
        if !self.systematic {
            return Err(Error::NotSystematic);
        }
        Ok(self.rows[i] >> self.k)
    }

    /// Packed `v = u G`.
    pub fn encode_packed(&self, message: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| message >> i & 1 == 1)
            .fold(0, |acc, (_, &row)| acc ^ row)
    }

    /// `v = u G` over GF(2).
    pub fn encode(&self, u: &[u8]) -> Result<Vec<u8>> {
        if u.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: u.len(),
            });
        }
        Ok(unpack(self.encode_packed(pack(u)), self.n))
    }

    fn ensure_enumerable(&self) -> Result<()> {
        if self.k > MAX_ENUMERATION_K {
            return Err(Error::Capacity(format!(
                "2^{} codewords exceed the enumeration limit 2^{MAX_ENUMERATION_K}",
                self.k
            )));
        }
        Ok(())
    }

    /// Visit every `(message, codeword)` pair in Gray-code order of messages.
    fn for_each_codeword(&self, mut f: impl FnMut(u64, u64)) {
        let mut message = 0u64;
        let mut word = 0u64;
        f(0, 0);
        for g in 1u64..(1u64 << self.k) {
            let bit = g.trailing_zeros() as usize;
            message ^= 1 << bit;
            word ^= self.rows[bit];
            f(message, word);
        }
    }

    /// Number of codewords of each weight `0..=n`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        self.ensure_enumerable()?;
        let mut dist = alloc::vec![0u64; self.n + 1];
        self.for_each_codeword(|_, w| dist[w.count_ones() as usize] += 1);
        Ok(dist)
    }

    /// Minimum Hamming weight over nonzero codewords, from the cache if present.
    pub fn min_distance(&self) -> Result<u32> {
        if let Some(d) = self.d_min {
            return Ok(d);
        }
        self.ensure_enumerable()?;
        let mut best = u32::MAX;
        self.for_each_codeword(|m, w| {
            if m != 0 {
                best = best.min(w.count_ones());
            }
        });
        Ok(best)
    }

    /// Compute and cache the minimum distance.
    pub fn with_min_distance(mut self) -> Result<Self> {
        self.d_min = Some(self.min_distance()?);
        Ok(self)
    }

    pub fn cached_min_distance(&self) -> Option<u32> {
        self.d_min
    }

    /// Exhaustive hard-decision ML decoding on packed words. Returns
    /// `(message, codeword)` for a codeword at least as close to `received` as
    /// every other codeword; among equally close codewords the lexicographically
    /// smallest one is chosen.
    pub fn ml_decode_hard_packed(&self, received: u64) -> Result<(u64, u64)> {
        self.ensure_enumerable()?;
        let mut best = (0u64, 0u64);
        let mut best_dist = u32::MAX;
        self.for_each_codeword(|m, w| {
            let d = (w ^ received).count_ones();
            if d < best_dist || (d == best_dist && lex_less(w, best.1)) {
                best_dist = d;
                best = (m, w);
            }
        });
        Ok(best)
    }

    pub fn ml_decode_hard(&self, received: &[u8]) -> Result<Vec<u8>> {
        if received.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: received.len(),
            });
        }
        let (_, w) = self.ml_decode_hard_packed(pack(received))?;
        Ok(unpack(w, self.n))
    }

    /// Soft ML decoding for BPSK (bit 0 -> +1): the codeword maximising the
    /// correlation with `samples`. Ties go to the lexicographically smaller word.
    pub fn ml_decode_soft_packed(&self, samples: &[f64]) -> Result<(u64, u64)> {
        if samples.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: samples.len(),
            });
        }
        self.ensure_enumerable()?;
        let mut best = (0u64, 0u64);
        let mut best_corr = f64::NEG_INFINITY;
        let mut msgs = Vec::with_capacity(1 << self.k);
        self.for_each_codeword(|m, w| msgs.push((m, w)));
        for (m, w) in msgs {
            let corr: f64 = samples
                .iter()
                .enumerate()
                .map(|(j, &y)| if w >> j & 1 == 0 { y } else { -y })
                .sum();
            if corr > best_corr || (corr == best_corr && lex_less(w, best.1)) {
                best_corr = corr;
                best = (m, w);
            }
        }
        Ok(best)
    }

    /// Parity-check rows `H = [P^T | I_{n-k}]` for a systematic code, packed.
    pub fn parity_check_rows(&self) -> Result<Vec<u64>> {
        if !self.systematic {
            return Err(Error::NotSystematic);
        }
        let r = self.n - self.k;
        Ok((0..r)
            .map(|j| {
                let pt = (0..self.k)
                    .filter(|&i| self.rows[i] >> (self.k + j) & 1 == 1)
                    .fold(0u64, |acc, i| acc | 1 << i);
                pt | 1 << (self.k + j)
            })
            .collect())
    }
}

/// `⌊(d1 d2 - 1) / 2⌋`, the number of errors a product code with component
/// distances `d1`, `d2` is guaranteed to correct.
pub fn product_correction_radius(d1: u32, d2: u32) -> u32 {
    (d1 * d2).saturating_sub(1) / 2
}

/// Two-dimensional product of a row code `(n1, k1)` and a column code `(n2, k2)`.
///
/// Information bits form a `k2 x k1` array; every row is encoded with the row
/// code, then every column of the result with the column code (checks on
/// checks included). Position `(i, j)` of the `n2 x n1` code array is code
/// position `i * n1 + j`.
#[derive(Debug, Clone)]
pub struct ProductCode {
    row_code: LinearBlockCode,
    col_code: LinearBlockCode,
}

impl ProductCode {
    pub fn new(row_code: LinearBlockCode, col_code: LinearBlockCode) -> Result<Self> {
        if row_code.n * col_code.n > MAX_LENGTH {
            return Err(invalid("product length exceeds 64"));
        }
        Ok(Self { row_code, col_code })
    }

    pub fn row_code(&self) -> &LinearBlockCode {
        &self.row_code
    }

    pub fn col_code(&self) -> &LinearBlockCode {
        &self.col_code
    }

    /// The product as an ordinary linear code of length `n1 n2`, dimension `k1 k2`.
    /// Info bit `(r, c)` is message bit `r * k1 + c`.
    pub fn to_linear_code(&self) -> Result<LinearBlockCode> {
        let n1 = self.row_code.n;
        let mut rows = Vec::with_capacity(self.row_code.k * self.col_code.k);
        for &col_row in &self.col_code.rows {
            for &row_row in &self.row_code.rows {
                // The encoded unit array is the outer product of the two rows.
                let mut word = 0u64;
                for i in (0..self.col_code.n).filter(|i| col_row >> i & 1 == 1) {
                    word |= row_row << (i * n1);
                }
                rows.push(word);
            }
        }
        LinearBlockCode::from_rows(n1 * self.col_code.n, rows)
    }

    pub fn correction_radius(&self) -> Result<u32> {
        Ok(product_correction_radius(
            self.row_code.min_distance()?,
            self.col_code.min_distance()?,
        ))
    }
}

/// Outcome of [`incomplete_product`].
#[derive(Debug, Clone)]
pub struct IncompleteProductReport {
    pub code: LinearBlockCode,
    pub d1: u32,
    pub d2: u32,
    /// `d1 + d2 - 1`.
    pub bound: u32,
    pub d_min: u32,
    /// Both component codes have a minimum-weight codeword with exactly one
    /// nonzero information bit.
    pub unit_weight_condition: bool,
}

impl IncompleteProductReport {
    pub fn meets_bound(&self) -> bool {
        self.d_min >= self.bound
    }

    pub fn attains_bound(&self) -> bool {
        self.d_min == self.bound
    }
}

fn has_unit_info_min_codeword(code: &LinearBlockCode, d: u32) -> bool {
    // For a systematic code the weight-1-information codewords are the rows of G.
    code.rows.iter().any(|r| r.count_ones() == d)
}

/// Product of two systematic codes with the checks on checks omitted.
///
/// Layout: the `k2 x k1` information array (row-major), then the `n1 - k1`
/// row parities of each information row, then the `n2 - k2` column parities of
/// each information column. The result is systematic and its minimum distance
/// is at least `d1 + d2 - 1`.
pub fn incomplete_product(
    row_code: &LinearBlockCode,
    col_code: &LinearBlockCode,
) -> Result<IncompleteProductReport> {
    if !row_code.systematic || !col_code.systematic {
        return Err(Error::NotSystematic);
    }
    let (k1, r1) = (row_code.k, row_code.n - row_code.k);
    let (k2, r2) = (col_code.k, col_code.n - col_code.k);
    let info = k1 * k2;
    let n = info + k2 * r1 + k1 * r2;
    if n > MAX_LENGTH {
        return Err(invalid("incomplete product length exceeds 64"));
    }
    let mut rows = Vec::with_capacity(info);
    for r in 0..k2 {
        for c in 0..k1 {
            let unit = 1u64 << (r * k1 + c);
            let row_parity = row_code.parity_row(c)? << (info + r * r1);
            let col_parity = col_code.parity_row(r)? << (info + k2 * r1 + c * r2);
            rows.push(unit | row_parity | col_parity);
        }
    }
    let code = LinearBlockCode::from_rows(n, rows)?.with_min_distance()?;
    let d1 = row_code.min_distance()?;
    let d2 = col_code.min_distance()?;
    Ok(IncompleteProductReport {
        d_min: code.min_distance()?,
        code,
        d1,
        d2,
        bound: d1 + d2 - 1,
        unit_weight_condition: has_unit_info_min_codeword(row_code, d1)
            && has_unit_info_min_codeword(col_code, d2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn encode_examples() {
        let rep = LinearBlockCode::repetition(3).unwrap();
        assert_eq!(rep.encode(&[1]).unwrap(), vec![1, 1, 1]);
        assert_eq!(rep.encode(&[0]).unwrap(), vec![0, 0, 0]);
        let h = LinearBlockCode::hamming74();
        let v = h.encode(&[1, 0, 0, 0]).unwrap();
        assert_eq!(v.iter().filter(|&&b| b == 1).count(), 3);
        assert_eq!(
            h.encode(&[1, 0]).err(),
            Some(Error::LengthMismatch {
                expected: 4,
                actual: 2
            })
        );
    }

    #[test]
    fn rank_is_enforced() {
        let err = LinearBlockCode::from_rows(4, vec![0b0011, 0b0110, 0b0101]).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rank: 2, k: 3 });
    }

    #[test]
    fn min_distances() {
        assert_eq!(LinearBlockCode::repetition(3).unwrap().min_distance().unwrap(), 3);
        assert_eq!(LinearBlockCode::hamming74().min_distance().unwrap(), 3);
        let rep = LinearBlockCode::repetition(3).unwrap();
        let prod = ProductCode::new(rep.clone(), rep).unwrap();
        assert_eq!(prod.to_linear_code().unwrap().min_distance().unwrap(), 9);
        assert_eq!(prod.correction_radius().unwrap(), 4);
    }

    #[test]
    fn enumeration_guard() {
        let big = LinearBlockCode::identity(25).unwrap();
        assert!(matches!(big.min_distance(), Err(Error::Capacity(_))));
    }

    #[test]
    fn ml_tie_goes_lexicographic() {
        let rep2 = LinearBlockCode::repetition(2).unwrap();
        assert_eq!(rep2.ml_decode_hard(&[0, 1]).unwrap(), vec![0, 0]);
        assert_eq!(rep2.ml_decode_hard(&[1, 0]).unwrap(), vec![0, 0]);
        assert_eq!(rep2.ml_decode_hard(&[1, 1]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn hamming_corrects_single_errors() {
        let h = LinearBlockCode::hamming74();
        for m in 0..16u64 {
            let v = h.encode_packed(m);
            assert_eq!(h.ml_decode_hard_packed(v).unwrap(), (m, v));
            for j in 0..7 {
                assert_eq!(h.ml_decode_hard_packed(v ^ 1 << j).unwrap(), (m, v));
            }
        }
    }

    #[test]
    fn radius_formula() {
        assert_eq!(product_correction_radius(3, 3), 4);
        assert_eq!(product_correction_radius(1, 1), 0);
        assert_eq!(product_correction_radius(3, 4), 5);
    }

    #[test]
    fn incomplete_product_of_repetition_codes() {
        let rep = LinearBlockCode::repetition(3).unwrap();
        let rep = LinearBlockCode::systematic(1, 2, &[rep.parity_row(0).unwrap()]).unwrap();
        let rpt = incomplete_product(&rep, &rep).unwrap();
        assert_eq!(rpt.code.n(), 5);
        assert_eq!(rpt.d_min, 5);
        assert!(rpt.attains_bound());
        assert!(rpt.unit_weight_condition);

        let id = LinearBlockCode::identity(3).unwrap();
        let rpt = incomplete_product(&id, &id).unwrap();
        assert_eq!((rpt.d_min, rpt.bound), (1, 1));
    }

    #[test]
    fn parity_check_annihilates_codewords() {
        let h = LinearBlockCode::hamming74();
        let hrows = h.parity_check_rows().unwrap();
        for m in 0..16 {
            let v = h.encode_packed(m);
            assert!(hrows.iter().all(|r| (r & v).count_ones().is_multiple_of(2)));
        }
    }

    #[test]
    fn lex_order() {
        // 00 < 01 < 10 < 11 with position 0 written first
        assert!(lex_less(0b00, 0b10)); // "00" < "01"
        assert!(lex_less(0b10, 0b01)); // "01" < "10"
        assert!(!lex_less(0b01, 0b01));
    }
}
