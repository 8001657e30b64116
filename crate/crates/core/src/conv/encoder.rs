use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::gf2::BinaryPolynomial;
use crate::{invalid, Error, Result};

/// Largest total encoder memory accepted (2^20 trellis states).
pub const MAX_TOTAL_MEMORY: usize = 20;

fn parity(x: u64) -> u64 {
    (x.count_ones() & 1) as u64
}

/// A feedforward `(n, k, m)` convolutional encoder.
///
/// `generators[i][j]` is `g_i^{(j)}(D)`, the response of output `j` to input
/// `i`, packed with bit `l` holding the coefficient of `D^l`. Output `j` in the
/// D domain is `v^{(j)}(D) = Σ_i u^{(i)}(D) g_i^{(j)}(D)`.
///
/// The encoder state packs one shift register per input, input 0 in the low
/// bits; inside a register bit `l - 1` holds `u_{t-l}`.
#[derive(Clone, PartialEq, Eq)]
pub struct ConvEncoder {
    k_in: usize,
    n_out: usize,
    generators: Vec<Vec<u64>>,
    memories: Vec<usize>,
    offsets: Vec<usize>,
}

impl ConvEncoder {
    pub fn new(generators: Vec<Vec<u64>>) -> Result<Self> {
        let k_in = generators.len();
        if k_in == 0 {
            return Err(invalid("encoder needs at least one input"));
        }
        let n_out = generators[0].len();
        if n_out == 0 || n_out > 64 {
            return Err(invalid("encoder needs 1..=64 outputs"));
        }
        if generators.iter().any(|row| row.len() != n_out) {
            return Err(invalid("every input needs one generator per output"));
        }
        if generators.iter().flatten().all(|&g| g == 0) {
            return Err(invalid("all generators are zero"));
        }
        let memories: Vec<usize> = generators
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&g| if g == 0 { 0 } else { 63 - g.leading_zeros() as usize })
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let total: usize = memories.iter().sum();
        if total > MAX_TOTAL_MEMORY {
            return Err(Error::Capacity(format!(
                "total memory {total} exceeds {MAX_TOTAL_MEMORY}"
            )));
        }
        let offsets = memories
            .iter()
            .scan(0, |acc, &m| {
                let o = *acc;
                *acc += m;
                Some(o)
            })
            .collect();
        Ok(Self {
            k_in,
            n_out,
            generators,
            memories,
            offsets,
        })
    }

    /// Rate `1/n` encoder from one packed generator per output.
    pub fn rate_one_over(generators: &[u64]) -> Result<Self> {
        Self::new(alloc::vec![generators.to_vec()])
    }

    /// Parse generators in octal, `k_in` rows of `n_out` entries each.
    ///
    /// Octal convention: the binary expansion of every generator of input `i`
    /// is right-justified (left-padded with zeros) to `ν_i + 1` bits, where
    /// `ν_i + 1` is the widest expansion among that input's generators, and is
    /// then read left to right as `g_0, g_1, ..., g_ν` (lowest degree first).
    /// So `7, 5` is `(1 + D + D^2, 1 + D^2)` and `2, 3` is `(1, 1 + D)`.
    pub fn from_octal(k_in: usize, n_out: usize, octal: &[&str]) -> Result<Self> {
        if octal.len() != k_in * n_out {
            return Err(Error::LengthMismatch {
                expected: k_in * n_out,
                actual: octal.len(),
            });
        }
        let values = octal
            .iter()
            .map(|s| {
                u64::from_str_radix(s.trim(), 8)
                    .map_err(|_| invalid(format!("not an octal generator: {s:?}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        let mut generators = Vec::with_capacity(k_in);
        for row in values.chunks(n_out) {
            let width = row
                .iter()
                .map(|&v| 64 - v.leading_zeros() as usize)
                .max()
                .unwrap_or(0);
            generators.push(
                row.iter()
                    .map(|&v| (0..width).fold(0u64, |g, l| g | (v >> (width - 1 - l) & 1) << l))
                    .collect(),
            );
        }
        Self::new(generators)
    }

    /// Octal strings in the [`Self::from_octal`] convention.
    pub fn to_octal(&self) -> Vec<alloc::string::String> {
        let mut out = Vec::new();
        for (i, row) in self.generators.iter().enumerate() {
            let width = self.memories[i] + 1;
            for &g in row {
                let v = (0..width).fold(0u64, |v, l| v | (g >> l & 1) << (width - 1 - l));
                out.push(format!("{v:o}"));
            }
        }
        out
    }

    pub fn k_in(&self) -> usize {
        self.k_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn rate(&self) -> f64 {
        self.k_in as f64 / self.n_out as f64
    }

    /// Memory order `m = max ν_i`.
    pub fn memory_order(&self) -> usize {
        self.memories.iter().copied().max().unwrap_or(0)
    }

    /// Total memory `Σ ν_i`.
    pub fn total_memory(&self) -> usize {
        self.memories.iter().sum()
    }

    pub fn num_states(&self) -> usize {
        1 << self.total_memory()
    }

    pub fn generator(&self, input: usize, output: usize) -> BinaryPolynomial {
        BinaryPolynomial::from_bits(self.generators[input][output])
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// One encoder step: `(next_state, output)` with bit `j` of `output` = `v^{(j)}`.
    pub fn step(&self, state: u32, input: u32) -> (u32, u64) {
        let mut next = 0u32;
        let mut out = 0u64;
        for i in 0..self.k_in {
            let nu = self.memories[i];
            let reg = (state as u64 >> self.offsets[i]) & ((1u64 << nu) - 1);
            let window = (reg << 1) | (input as u64 >> i & 1);
            for (j, &g) in self.generators[i].iter().enumerate() {
                out ^= parity(window & g) << j;
            }
            next |= ((window & ((1u64 << nu) - 1)) as u32) << self.offsets[i];
        }
        (next, out)
    }

    /// Encode `u` (length a multiple of `k_in`, block `t` = bits `t*k..(t+1)*k`).
    /// Output is interleaved per time unit: `v_t^{(0)}, ..., v_t^{(n-1)}`. When
    /// `terminated`, `m` all-zero input blocks flush the registers.
    pub fn encode(&self, u: &[u8], terminated: bool) -> Result<Vec<u8>> {
        if !u.len().is_multiple_of(self.k_in) {
            return Err(invalid(format!(
                "input length {} is not a multiple of k = {}",
                u.len(),
                self.k_in
            )));
        }
        let steps = u.len() / self.k_in + if terminated { self.memory_order() } else { 0 };
        let mut out = Vec::with_capacity(steps * self.n_out);
        let mut state = 0u32;
        for t in 0..steps {
            let block = u
                .get(t * self.k_in..(t + 1) * self.k_in)
                .map_or(0, |b| {
                    b.iter()
                        .enumerate()
                        .fold(0u32, |acc, (i, &x)| acc | ((x & 1) as u32) << i)
                });
            let (next, v) = self.step(state, block);
            out.extend((0..self.n_out).map(|j| (v >> j & 1) as u8));
            state = next;
        }
        Ok(out)
    }

    /// D-domain encoding: `[v^{(0)}(D), ..., v^{(n-1)}(D)]` with
    /// `v^{(j)}(D) = Σ_i u^{(i)}(D) g_i^{(j)}(D)`, computed by polynomial products.
    pub fn encode_polynomials(&self, inputs: &[BinaryPolynomial]) -> Result<Vec<BinaryPolynomial>> {
        if inputs.len() != self.k_in {
            return Err(Error::LengthMismatch {
                expected: self.k_in,
                actual: inputs.len(),
            });
        }
        Ok((0..self.n_out)
            .map(|j| {
                inputs
                    .iter()
                    .enumerate()
                    .fold(BinaryPolynomial::zero(), |acc, (i, u)| {
                        acc + u * &self.generator(i, j)
                    })
            })
            .collect())
    }

    /// An encoder is catastrophic unless the gcd of its `k x k` generator-matrix
    /// minors is a power of `D`.
    pub fn is_catastrophic(&self) -> bool {
        let g: Vec<Vec<BinaryPolynomial>> = (0..self.k_in)
            .map(|i| (0..self.n_out).map(|j| self.generator(i, j)).collect())
            .collect();
        let mut gcd = BinaryPolynomial::zero();
        for cols in combinations(self.n_out, self.k_in) {
            let minor = determinant(&g, &cols);
            gcd = if gcd.is_zero() {
                minor
            } else if minor.is_zero() {
                gcd
            } else {
                gcd.gcd(&minor).expect("nonzero operand")
            };
        }
        // Zero gcd means the generator matrix is rank deficient.
        gcd.weight() != 1
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant over GF(2)[D] of the square submatrix with the given columns,
/// by cofactor expansion along the first row (signs vanish in characteristic 2).
fn determinant(g: &[Vec<BinaryPolynomial>], cols: &[usize]) -> BinaryPolynomial {
    fn rec(g: &[Vec<BinaryPolynomial>], row: usize, cols: &[usize]) -> BinaryPolynomial {
        if cols.is_empty() {
            return BinaryPolynomial::one();
        }
        let mut acc = BinaryPolynomial::zero();
        for (idx, &c) in cols.iter().enumerate() {
            if g[row][c].is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != idx)
                .map(|(_, &c)| c)
                .collect();
            acc = acc + &g[row][c] * &rec(g, row + 1, &rest);
        }
        acc
    }
    rec(g, 0, cols)
}

impl fmt::Debug for ConvEncoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ConvEncoder({}, {}, {}) octal {:?}",
            self.n_out,
            self.k_in,
            self.memory_order(),
            self.to_octal()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn enc75() -> ConvEncoder {
        ConvEncoder::from_octal(1, 2, &["7", "5"]).unwrap()
    }

    #[test]
    fn octal_convention() {
        let e = enc75();
        assert_eq!(e.generator(0, 0), BinaryPolynomial::from_exponents(&[0, 1, 2]));
        assert_eq!(e.generator(0, 1), BinaryPolynomial::from_exponents(&[0, 2]));
        let e = ConvEncoder::from_octal(1, 2, &["2", "3"]).unwrap();
        assert_eq!(e.generator(0, 0), BinaryPolynomial::one());
        assert_eq!(e.generator(0, 1), BinaryPolynomial::from_exponents(&[0, 1]));
        // 13 = 1011 -> 1 + D^2 + D^3
        let e = ConvEncoder::from_octal(1, 2, &["15", "13"]).unwrap();
        assert_eq!(e.generator(0, 1), BinaryPolynomial::from_exponents(&[0, 2, 3]));
        assert_eq!(e.to_octal(), vec!["15", "13"]);
        assert!(ConvEncoder::from_octal(1, 2, &["7", "9"]).is_err());
    }

    #[test]
    fn impulse_response() {
        let v = enc75().encode(&[1], true).unwrap();
        assert_eq!(v, vec![1, 1, 1, 0, 1, 1]);
        assert_eq!(v.iter().filter(|&&b| b == 1).count(), 5);
        assert!(enc75().encode(&[0; 8], true).unwrap().iter().all(|&b| b == 0));
    }

    #[test]
    fn time_and_d_domain_agree() {
        let e = enc75();
        let u = [1u8, 0, 1, 1, 0, 0, 1];
        let v = e.encode(&u, true).unwrap();
        let polys = e
            .encode_polynomials(&[BinaryPolynomial::from_coefficients(&u)])
            .unwrap();
        for (j, p) in polys.iter().enumerate() {
            let stream: Vec<u8> = v.iter().skip(j).step_by(2).copied().collect();
            assert_eq!(&BinaryPolynomial::from_coefficients(&stream), p);
        }
    }

    #[test]
    fn catastrophic_detection() {
        assert!(!enc75().is_catastrophic());
        // (1 + D, 1 + D^2) share the factor 1 + D.
        assert!(ConvEncoder::rate_one_over(&[0b11, 0b101]).unwrap().is_catastrophic());
        // A common factor D alone is harmless.
        assert!(!ConvEncoder::rate_one_over(&[0b10, 0b110]).unwrap().is_catastrophic());
        // rate 2/3 with full-rank minors
        let e = ConvEncoder::new(vec![vec![0b11, 0b10, 0b11], vec![0b10, 0b1, 0b1]]).unwrap();
        assert!(!e.is_catastrophic());
    }

    #[test]
    fn two_input_step() {
        let e = ConvEncoder::new(vec![vec![0b11, 0b10, 0b11], vec![0b10, 0b1, 0b1]]).unwrap();
        assert_eq!(e.num_states(), 4);
        let u = [1u8, 0, 0, 1, 1, 1];
        let v = e.encode(&u, true).unwrap();
        let u0 = BinaryPolynomial::from_coefficients(&[1, 0, 1]);
        let u1 = BinaryPolynomial::from_coefficients(&[0, 1, 1]);
        let polys = e.encode_polynomials(&[u0, u1]).unwrap();
        for (j, p) in polys.iter().enumerate() {
            let stream: Vec<u8> = v.iter().skip(j).step_by(3).copied().collect();
            assert_eq!(&BinaryPolynomial::from_coefficients(&stream), p);
        }
    }
}
