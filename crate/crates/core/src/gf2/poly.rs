use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use crate::{Error, Result};

const WORD: usize = 64;

/// A polynomial over GF(2), packed 64 coefficients per word, lowest degree first.
///
/// The representation is canonical: trailing zero words are always trimmed, so the
/// zero polynomial is the empty word vector and two equal polynomials compare equal
/// structurally. The degree of the zero polynomial is reported as `None` rather than
/// a sentinel integer.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPolynomial {
    words: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_bits(1)
    }

    /// `X^d`.
    pub fn monomial(d: usize) -> Self {
        let mut words = vec![0u64; d / WORD + 1];
        words[d / WORD] = 1 << (d % WORD);
        Self { words }
    }

    /// Bit `i` of `bits` is the coefficient of `X^i`.
    pub fn from_bits(bits: u64) -> Self {
        let mut p = Self { words: vec![bits] };
        p.trim();
        p
    }

    /// Coefficients given lowest degree first; any nonzero byte counts as 1.
    pub fn from_coefficients(coeffs: &[u8]) -> Self {
        let mut words = vec![0u64; coeffs.len().div_ceil(WORD)];
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                words[i / WORD] |= 1 << (i % WORD);
            }
        }
        let mut p = Self { words };
        p.trim();
        p
    }

    /// Sum of `X^e` over the listed exponents (repeats cancel).
    pub fn from_exponents(exponents: &[usize]) -> Self {
        exponents
            .iter()
            .fold(Self::zero(), |acc, &e| acc + Self::monomial(e))
    }

    /// `X^n + 1`.
    pub fn x_pow_n_plus_one(n: usize) -> Self {
        Self::monomial(n) + Self::one()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - 1 - top.leading_zeros() as usize))
    }

    pub fn coefficient(&self, i: usize) -> bool {
        self.words
            .get(i / WORD)
            .is_some_and(|w| (w >> (i % WORD)) & 1 == 1)
    }

    /// Coefficients lowest degree first, `degree + 1` entries (empty for zero).
    pub fn coefficients(&self) -> Vec<u8> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.coefficient(i) as u8).collect(),
        }
    }

    /// Hamming weight (number of nonzero coefficients).
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// The packed form, if the degree is below 64.
    pub fn to_bits(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// `self ^= other * X^shift`, in place.
    fn xor_shifted(&mut self, other: &Self, shift: usize) {
        if other.is_zero() {
            return;
        }
        let word_shift = shift / WORD;
        let bit_shift = shift % WORD;
        let needed = other.words.len() + word_shift + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + word_shift] ^= w << bit_shift;
            if bit_shift != 0 {
                self.words[i + word_shift + 1] ^= w >> (WORD - bit_shift);
            }
        }
        self.trim();
    }

    pub fn shl(&self, n: usize) -> Self {
        let mut out = Self::zero();
        out.xor_shifted(self, n);
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        // Iterate over the sparser operand.
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        if let Some(d) = sparse.degree() {
            for i in 0..=d {
                if sparse.coefficient(i) {
                    out.xor_shifted(dense, i);
                }
            }
        }
        out
    }

    /// Long division: returns the unique `(q, r)` with `self = q*g + r` and
    /// `deg r < deg g`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let shift = dr - dg;
            r.xor_shifted(g, shift);
            q.xor_shifted(&Self::one(), shift);
        }
        Ok((q, r))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        Ok(self.divmod(g)?.1)
    }

    /// Greatest common divisor by the Euclidean algorithm. Over GF(2) every
    /// nonzero polynomial is monic, so the result is monic automatically.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Least common multiple; `lcm(0, f) = 0`.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other).expect("operands are nonzero");
        let (q, _) = self.divmod(&g).expect("gcd is nonzero");
        q.mul_ref(other)
    }

    /// Largest `l` such that `X^l` divides `self` (`None` for zero).
    pub fn trailing_zeros(&self) -> Option<usize> {
        let (i, w) = self.words.iter().enumerate().find(|(_, &w)| w != 0)?;
        Some(i * WORD + w.trailing_zeros() as usize)
    }

    /// Evaluate at a binary point (0 or 1).
    pub fn eval_binary(&self, x: bool) -> bool {
        if x {
            self.weight() % 2 == 1
        } else {
            self.coefficient(0)
        }
    }
}

impl Add for BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn add(mut self, rhs: Self) -> Self {
        self.xor_shifted(&rhs, 0);
        self
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn add(self, rhs: Self) -> BinaryPolynomial {
        let mut out = self.clone();
        out.xor_shifted(rhs, 0);
        out
    }
}

impl Mul for BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn mul(self, rhs: Self) -> BinaryPolynomial {
        self.mul_ref(rhs)
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=d).filter(|&i| self.coefficient(i)) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(exps: &[usize]) -> BinaryPolynomial {
        BinaryPolynomial::from_exponents(exps)
    }

    #[test]
    fn zero_is_canonical() {
        let a = p(&[3, 1]);
        let z = &a + &a;
        assert!(z.is_zero());
        assert_eq!(z, BinaryPolynomial::zero());
        assert_eq!(z.degree(), None);
        assert_eq!(BinaryPolynomial::from_coefficients(&[0, 0, 0]), z);
    }

    #[test]
    fn divmod_small_example() {
        // X^3 + X + 1 = (X^2 + X)(X + 1) + 1
        let (q, r) = p(&[3, 1, 0]).divmod(&p(&[1, 0])).unwrap();
        assert_eq!(q, p(&[2, 1]));
        assert_eq!(r, BinaryPolynomial::one());
        assert_eq!(&(&q * &p(&[1, 0])) + &r, p(&[3, 1, 0]));
    }

    #[test]
    fn divmod_identity_and_zero() {
        let g = p(&[5, 2, 0]);
        assert_eq!(g.divmod(&g).unwrap(), (BinaryPolynomial::one(), BinaryPolynomial::zero()));
        assert_eq!(
            BinaryPolynomial::zero().divmod(&g).unwrap(),
            (BinaryPolynomial::zero(), BinaryPolynomial::zero())
        );
        assert_eq!(g.divmod(&BinaryPolynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_cases() {
        let f = p(&[4, 1, 0]);
        assert_eq!(f.gcd(&BinaryPolynomial::zero()).unwrap(), f);
        assert_eq!(f.gcd(&f).unwrap(), f);
        // X^2 + 1 = (X + 1)^2
        assert_eq!(p(&[2, 0]).gcd(&p(&[1, 0])).unwrap(), p(&[1, 0]));
        assert_eq!(
            BinaryPolynomial::zero().gcd(&BinaryPolynomial::zero()),
            Err(Error::ZeroGcd)
        );
    }

    #[test]
    fn multiword_shift_and_divide() {
        let n = 1023;
        let big = BinaryPolynomial::x_pow_n_plus_one(n);
        assert_eq!(big.degree(), Some(n));
        // X^1023 + 1 is divisible by X + 1.
        let (q, r) = big.divmod(&p(&[1, 0])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.weight(), 1023);
        assert_eq!(&q * &p(&[1, 0]), big);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[4, 1, 0]).to_string(), "1 + X + X^4");
        assert_eq!(BinaryPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn lcm_of_coprime_is_product() {
        let a = p(&[4, 1, 0]);
        let b = p(&[4, 3, 2, 1, 0]);
        assert_eq!(a.lcm(&b), &a * &b);
        assert_eq!(a.lcm(&a), a);
    }
}
