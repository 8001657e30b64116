use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::BinaryPolynomial;
use crate::{invalid, Error, Result};

/// Default primitive polynomials for m = 2..=10, bit i = coefficient of X^i.
const DEFAULT_PRIMITIVE: [u32; 9] = [
    0x7,   // 1 + X + X^2
    0xB,   // 1 + X + X^3
    0x13,  // 1 + X + X^4
    0x25,  // 1 + X^2 + X^5
    0x43,  // 1 + X + X^6
    0x89,  // 1 + X^3 + X^7
    0x11D, // 1 + X^2 + X^3 + X^4 + X^8
    0x211, // 1 + X^4 + X^9
    0x409, // 1 + X^3 + X^10
];

pub const MAX_DEGREE: u32 = 16;

/// GF(2^m) built from a primitive polynomial.
///
/// Elements are stored in vector form: bit `j` of the `u32` is the coordinate
/// `a_j` of `a_0 + a_1 α + ... + a_{m-1} α^{m-1}`. The log/antilog tables are
/// built once and the field is immutable afterwards.
#[derive(Clone)]
pub struct ExtensionField {
    m: u32,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl ExtensionField {
    /// The field for `m` in `2..=10` using the built-in primitive polynomial.
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=10).contains(&m) {
            return Err(invalid("built-in primitive polynomials cover m = 2..=10"));
        }
        Self::with_primitive(m, DEFAULT_PRIMITIVE[(m - 2) as usize])
    }

    /// The field generated by `primitive` (bit i = coefficient of X^i), which must
    /// have degree `m` and be primitive. Primitivity is checked by walking the
    /// powers of α: they must return to 1 for the first time at 2^m - 1.
    pub fn with_primitive(m: u32, primitive: u32) -> Result<Self> {
        if !(2..=MAX_DEGREE).contains(&m) {
            return Err(invalid("field degree must be in 2..=16"));
        }
        if primitive >> m != 1 {
            return Err(Error::NotPrimitive(primitive));
        }
        let order = (1usize << m) - 1;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; order + 1];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            if i > 0 && x == 1 {
                return Err(Error::NotPrimitive(primitive));
            }
            *slot = x;
            log[x as usize] = i as u32;
            x <<= 1;
            if x >> m & 1 == 1 {
                x ^= primitive;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive(primitive));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(Self {
            m,
            primitive,
            exp,
            log,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// 2^m - 1, the order of the multiplicative group.
    pub fn order(&self) -> usize {
        (1usize << self.m) - 1
    }

    pub fn size(&self) -> usize {
        1usize << self.m
    }

    pub fn primitive_bits(&self) -> u32 {
        self.primitive
    }

    pub fn primitive_polynomial(&self) -> BinaryPolynomial {
        BinaryPolynomial::from_bits(self.primitive as u64)
    }

    fn same_field(&self, other: &Self) -> bool {
        core::ptr::eq(self, other) || (self.m == other.m && self.primitive == other.primitive)
    }

    fn check(&self, v: u32) -> Result<()> {
        if (v as usize) < self.size() {
            Ok(())
        } else {
            Err(invalid("vector has more than m coordinates"))
        }
    }

    pub fn element(&self, vector: u32) -> Result<Element<'_>> {
        self.check(vector)?;
        Ok(Element {
            field: self,
            vector,
        })
    }

    pub fn zero(&self) -> Element<'_> {
        Element {
            field: self,
            vector: 0,
        }
    }

    pub fn one(&self) -> Element<'_> {
        Element {
            field: self,
            vector: 1,
        }
    }

    /// α^i for any integer exponent (reduced mod 2^m - 1).
    pub fn alpha_pow(&self, i: i64) -> Element<'_> {
        let e = i.rem_euclid(self.order() as i64) as usize;
        Element {
            field: self,
            vector: self.exp[e],
        }
    }

    /// Table-driven product of two vectors.
    pub fn mul_vec(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Product by shift-and-add with reduction modulo the primitive polynomial.
    /// Independent of the tables; kept as the oracle for [`Self::mul_vec`].
    pub fn mul_vec_reduce(&self, a: u32, b: u32) -> u32 {
        let mut acc = 0u32;
        let mut x = a;
        for j in 0..self.m {
            if b >> j & 1 == 1 {
                acc ^= x;
            }
            x <<= 1;
            if x >> self.m & 1 == 1 {
                x ^= self.primitive;
            }
        }
        acc
    }

    pub fn inv_vec(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroElement);
        }
        let l = self.log[a as usize] as usize;
        Ok(self.exp[(self.order() - l) % self.order()])
    }

    pub fn pow_vec(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (e % self.order() as u64);
        self.exp[(l % self.order() as u64) as usize]
    }

    /// Discrete log of a nonzero vector.
    pub fn log_vec(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Conjugacy class of the exponent `i` under doubling modulo 2^m - 1,
    /// i.e. the exponents of `α^i, α^{2i}, α^{4i}, ...`.
    pub fn cyclotomic_coset(&self, i: usize) -> Vec<usize> {
        let n = self.order();
        let start = i % n;
        let mut coset = vec![start];
        let mut j = (start * 2) % n;
        while j != start {
            coset.push(j);
            j = (j * 2) % n;
        }
        coset
    }

    /// Evaluate a binary polynomial at a field element by Horner's rule.
    pub fn eval(&self, p: &BinaryPolynomial, x: u32) -> u32 {
        let Some(d) = p.degree() else { return 0 };
        (0..=d)
            .rev()
            .fold(0, |acc, i| self.mul_vec(acc, x) ^ p.coefficient(i) as u32)
    }

    /// Minimal polynomial of a nonzero vector: the product of `(X + c)` over the
    /// conjugates `c = e^(2^i)`.
    pub fn minimal_polynomial_vec(&self, e: u32) -> Result<BinaryPolynomial> {
        self.check(e)?;
        if e == 0 {
            return Err(Error::ZeroElement);
        }
        let mut conjugates = vec![e];
        let mut c = self.mul_vec(e, e);
        while c != e {
            conjugates.push(c);
            c = self.mul_vec(c, c);
        }
        // coeffs[i] = coefficient of X^i, as field elements
        let mut coeffs: Vec<u32> = vec![1];
        for &root in &conjugates {
            let mut next = vec![0u32; coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] ^= a;
                next[i] ^= self.mul_vec(a, root);
            }
            coeffs = next;
        }
        let mut bits = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            match c {
                0 | 1 => bits.push(c as u8),
                _ => return Err(invalid("conjugate product left GF(2)")),
            }
        }
        Ok(BinaryPolynomial::from_coefficients(&bits))
    }
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for ExtensionField {}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.m, self.primitive_polynomial())
    }
}

/// An element of a particular [`ExtensionField`].
#[derive(Clone, Copy)]
pub struct Element<'f> {
    field: &'f ExtensionField,
    vector: u32,
}

impl<'f> Element<'f> {
    pub fn field(&self) -> &'f ExtensionField {
        self.field
    }

    pub fn vector(&self) -> u32 {
        self.vector
    }

    /// Coordinates `(a_0, ..., a_{m-1})` of `a_0 + a_1 α + ... + a_{m-1} α^{m-1}`.
    pub fn coordinates(&self) -> Vec<u8> {
        (0..self.field.m).map(|j| (self.vector >> j & 1) as u8).collect()
    }

    pub fn from_coordinates(field: &'f ExtensionField, coords: &[u8]) -> Result<Self> {
        if coords.len() != field.m as usize {
            return Err(Error::LengthMismatch {
                expected: field.m as usize,
                actual: coords.len(),
            });
        }
        let vector = coords
            .iter()
            .enumerate()
            .fold(0u32, |v, (j, &a)| v | ((a & 1) as u32) << j);
        Ok(Self { field, vector })
    }

    pub fn is_zero(&self) -> bool {
        self.vector == 0
    }

    /// Exponent `i` with `self = α^i`, for nonzero elements.
    pub fn log(&self) -> Option<u32> {
        self.field.log_vec(self.vector)
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field.same_field(other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self {
            field: self.field,
            vector: self.vector ^ other.vector,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self {
            field: self.field,
            vector: self.field.mul_vec(self.vector, other.vector),
        })
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self {
            field: self.field,
            vector: self.field.inv_vec(self.vector)?,
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        Self {
            field: self.field,
            vector: self.field.pow_vec(self.vector, e),
        }
    }

    pub fn minimal_polynomial(&self) -> Result<BinaryPolynomial> {
        self.field.minimal_polynomial_vec(self.vector)
    }
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(other.field) && self.vector == other.vector
    }
}

impl Eq for Element<'_> {}

impl fmt::Debug for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => f.write_str("0"),
            Some(l) => write!(f, "α^{l} ({:0w$b})", self.vector, w = self.field.m as usize),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_default_polynomials_are_primitive() {
        for m in 2..=10 {
            let f = ExtensionField::new(m).unwrap();
            assert_eq!(f.alpha_pow(f.order() as i64).vector(), 1);
        }
    }

    #[test]
    fn rejects_non_primitive() {
        // 1 + X + X^2 + X^3 + X^4 is irreducible but α has order 5.
        assert_eq!(
            ExtensionField::with_primitive(4, 0x1F).err(),
            Some(Error::NotPrimitive(0x1F))
        );
        // reducible: (1 + X)^2 = 1 + X^2
        assert!(ExtensionField::with_primitive(2, 0x5).is_err());
        // wrong degree
        assert!(ExtensionField::with_primitive(4, 0x25).is_err());
    }

    #[test]
    fn gf16_alpha_times_alpha_cubed() {
        let f = ExtensionField::new(4).unwrap();
        let prod = f.alpha_pow(1).mul(&f.alpha_pow(3)).unwrap();
        // α^4 = 1 + α, coordinates (1,1,0,0)
        assert_eq!(prod, f.alpha_pow(4));
        assert_eq!(prod.coordinates(), vec![1, 1, 0, 0]);
        let a = f.alpha_pow(7);
        assert_eq!(a.mul(&f.one()).unwrap(), a);
        assert!(a.mul(&f.zero()).unwrap().is_zero());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f = ExtensionField::new(4).unwrap();
        let g = ExtensionField::new(5).unwrap();
        assert_eq!(f.one().mul(&g.one()).err(), Some(Error::FieldMismatch));
        assert_eq!(f.one().add(&g.one()).err(), Some(Error::FieldMismatch));
    }

    #[test]
    fn minimal_polynomials_gf16() {
        let f = ExtensionField::new(4).unwrap();
        assert_eq!(
            f.one().minimal_polynomial().unwrap(),
            BinaryPolynomial::from_exponents(&[0, 1])
        );
        assert_eq!(
            f.alpha_pow(1).minimal_polynomial().unwrap(),
            f.primitive_polynomial()
        );
        assert_eq!(
            f.alpha_pow(3).minimal_polynomial().unwrap(),
            BinaryPolynomial::from_exponents(&[0, 1, 2, 3, 4])
        );
        assert_eq!(f.zero().minimal_polynomial(), Err(Error::ZeroElement));
    }

    #[test]
    fn cosets() {
        let f = ExtensionField::new(4).unwrap();
        assert_eq!(f.cyclotomic_coset(3), vec![3, 6, 12, 9]);
        assert_eq!(f.cyclotomic_coset(5), vec![5, 10]);
    }

    #[test]
    fn coordinate_round_trip() {
        let f = ExtensionField::new(5).unwrap();
        for i in 0..31 {
            let e = f.alpha_pow(i);
            let back = Element::from_coordinates(&f, &e.coordinates()).unwrap();
            assert_eq!(back, e);
            assert_eq!(back.log(), Some(i as u32));
        }
    }
}
