//! L-value algebra.
//!
//! An L-value is `ln[P(u = +1) / P(u = -1)]` for one bit position, where `+1`
//! is the BPSK image of bit 0. It is a number attached to a position, not a
//! function of the bit's value.

use alloc::vec::Vec;
use core::ops::{Index, Sub};

use crate::math::{cosh, exp, ln, ln_1p, sqrt};

/// One L-value per bit position.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LlrSequence(Vec<f64>);

impl LlrSequence {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    /// All-zero L-values (uniform priors).
    pub fn zeros(len: usize) -> Self {
        Self(alloc::vec![0.0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    /// Bit decisions: negative L-values decode to 1, everything else to 0.
    pub fn hard_decisions(&self) -> Vec<u8> {
        self.0.iter().map(|&l| u8::from(l < 0.0)).collect()
    }
}

impl Index<usize> for LlrSequence {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Vec<f64>> for LlrSequence {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// `+1` for bit 0, `-1` for bit 1.
pub fn bipolar(bit: u8) -> f64 {
    if bit & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `L_a = ln[P(U = +1) / P(U = -1)]` from `P(U = +1)`.
pub fn apriori_llr(p_plus: f64) -> f64 {
    ln(p_plus / (1.0 - p_plus))
}

/// The factorisation `P(U = b) = A · e^{b L_a / 2}` for `b ∈ {-1, +1}`.
///
/// `A = sqrt(P(U=+1) P(U=-1))` and `e^{L_a/2} = sqrt(P(U=+1)/P(U=-1))`; neither
/// depends on the outcome `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AprioriFactor {
    pub a: f64,
    pub half_exp: f64,
}

impl AprioriFactor {
    pub fn from_probability(p_plus: f64) -> Self {
        let p_minus = 1.0 - p_plus;
        Self {
            a: sqrt(p_plus * p_minus),
            half_exp: sqrt(p_plus / p_minus),
        }
    }

    pub fn from_llr(la: f64) -> Self {
        Self {
            a: 1.0 / (2.0 * cosh(la / 2.0)),
            half_exp: exp(la / 2.0),
        }
    }

    /// `P(U = b)` for `b = +1.0` or `-1.0`.
    pub fn probability(&self, b: f64) -> f64 {
        if b > 0.0 {
            self.a * self.half_exp
        } else {
            self.a / self.half_exp
        }
    }

    /// `ln P(U = b) = ln A + b L_a / 2`.
    pub fn log_probability(la: f64, b: f64) -> f64 {
        -ln(2.0 * cosh(la / 2.0)) + b * la / 2.0
    }
}

/// The three APP decoder flavours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapMode {
    /// Sums and products of probabilities.
    Probability,
    /// Log domain with the exact Jacobian logarithm `max*`.
    Log,
    /// Log domain with `max*` replaced by `max`.
    MaxLog,
}

/// `max*(a, b) = ln(e^a + e^b) = max(a, b) + ln(1 + e^{-|a - b|})`.
pub fn max_star(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    a.max(b) + ln_1p(exp(-(a - b).abs()))
}

/// Combine two log-domain quantities according to `mode` (`Probability` is
/// treated like `Log`).
pub fn combine(mode: MapMode, a: f64, b: f64) -> f64 {
    match mode {
        MapMode::MaxLog => a.max(b),
        _ => max_star(a, b),
    }
}

/// Maximum of a non-empty slice under a partial order.
pub fn max_of<T: Copy + PartialOrd>(values: &[T]) -> Option<T> {
    let (&first, rest) = values.split_first()?;
    Some(
        rest.iter()
            .fold(first, |m, &v| if v > m { v } else { m }),
    )
}

/// Max-log L-value: `max(plus) - max(minus)` where `plus` are the log metrics
/// of the hypotheses `u = +1` and `minus` those of `u = -1`. Generic so the
/// same combining rule can run on exact decimal arithmetic.
pub fn max_log_l_value<T: Copy + PartialOrd + Sub<Output = T>>(plus: &[T], minus: &[T]) -> Option<T> {
    Some(max_of(plus)? - max_of(minus)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisation_example() {
        let f = AprioriFactor::from_probability(0.8);
        assert!((f.a - 0.4).abs() < 1e-15);
        assert!((f.half_exp - 2.0).abs() < 1e-15);
        assert!((f.probability(1.0) - 0.8).abs() < 1e-15);
        assert!((f.probability(-1.0) - 0.2).abs() < 1e-15);
        let g = AprioriFactor::from_llr(apriori_llr(0.8));
        assert!((g.a - f.a).abs() < 1e-15 && (g.half_exp - f.half_exp).abs() < 1e-14);
    }

    #[test]
    fn log_probability_matches() {
        for &p in &[0.1, 0.5, 0.93] {
            let la = apriori_llr(p);
            assert!((exp(AprioriFactor::log_probability(la, 1.0)) - p).abs() < 1e-14);
            assert!((exp(AprioriFactor::log_probability(la, -1.0)) - (1.0 - p)).abs() < 1e-14);
        }
    }

    #[test]
    fn max_star_identity() {
        let (a, b) = (1.3, -0.4);
        assert!((max_star(a, b) - ln(exp(a) + exp(b))).abs() < 1e-14);
        assert_eq!(max_star(f64::NEG_INFINITY, 2.0), 2.0);
        assert_eq!(combine(MapMode::MaxLog, a, b), a);
    }

    #[test]
    fn hard_decisions_tie_to_zero() {
        let l = LlrSequence::new(alloc::vec![1.0, -0.5, 0.0]);
        assert_eq!(l.hard_decisions(), alloc::vec![0, 1, 0]);
    }

    #[test]
    fn max_log_on_integers() {
        assert_eq!(max_log_l_value(&[245, 285], &[55, 275]), Some(10));
        assert_eq!(max_log_l_value::<i32>(&[], &[1]), None);
    }
}
