//! Free distance and weight enumerators of convolutional encoders.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::ConvEncoder;
use crate::{Error, Result};

const MAX_SEARCH_DEPTH: usize = 100_000;
const MAX_DETOURS_VISITED: u64 = 50_000_000;

/// Minimum output weight over all paths that leave the zero state with a
/// nonzero input and first return to it.
///
/// Branch-and-bound over trellis depth: each live state keeps the lightest
/// partial detour reaching it; anything at or above the best completed detour
/// is pruned, and the search stops once nothing is live. Catastrophic encoders
/// are rejected up front since they have zero-weight cycles off the zero state.
pub fn free_distance(encoder: &ConvEncoder) -> Result<u32> {
    if encoder.is_catastrophic() {
        return Err(Error::Catastrophic);
    }
    let states = encoder.num_states();
    let inputs = 1u32 << encoder.k_in();
    let mut best = u32::MAX;
    let mut live = vec![u32::MAX; states];
    for u in 1..inputs {
        let (s, out) = encoder.step(0, u);
        let w = out.count_ones();
        if s == 0 {
            best = best.min(w);
        } else {
            live[s as usize] = live[s as usize].min(w);
        }
    }
    for _ in 0..MAX_SEARCH_DEPTH {
        if live.iter().all(|&w| w >= best) {
            return Ok(best);
        }
        let mut next = vec![u32::MAX; states];
        for (s, &w) in live.iter().enumerate() {
            if w >= best {
                continue;
            }
            for u in 0..inputs {
                let (to, out) = encoder.step(s as u32, u);
                let w2 = w + out.count_ones();
                if to == 0 {
                    best = best.min(w2);
                } else if w2 < next[to as usize] {
                    next[to as usize] = w2;
                }
            }
        }
        live = next;
    }
    Err(Error::Capacity(format!(
        "free distance search exceeded depth {MAX_SEARCH_DEPTH}"
    )))
}

/// Truncated weight enumerator: `b[d][w]` counts detours of output weight `d`
/// and input weight `w`, for `d <= max_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSeries {
    pub max_d: u32,
    b: Vec<Vec<u64>>,
}

impl WeightSeries {
    fn from_map(max_d: u32, map: &BTreeMap<(u32, u32), u64>) -> Self {
        let mut b = vec![Vec::new(); max_d as usize + 1];
        for (&(d, w), &c) in map {
            let row = &mut b[d as usize];
            if row.len() <= w as usize {
                row.resize(w as usize + 1, 0);
            }
            row[w as usize] += c;
        }
        Self { max_d, b }
    }

    /// Build directly from codeword-weight counts `A_d` (input weights unknown,
    /// recorded as `w = 0`).
    pub fn from_distance_counts(counts: &[u64]) -> Self {
        let b = counts.iter().map(|&c| vec![c]).collect::<Vec<_>>();
        Self {
            max_d: counts.len().saturating_sub(1) as u32,
            b,
        }
    }

    /// `A_d = Σ_w B_{w,d}`: the input weight is summed out, nothing else.
    pub fn a(&self, d: u32) -> u64 {
        self.b.get(d as usize).map_or(0, |row| row.iter().sum())
    }

    pub fn b(&self, w: u32, d: u32) -> u64 {
        self.b
            .get(d as usize)
            .and_then(|row| row.get(w as usize))
            .copied()
            .unwrap_or(0)
    }

    /// `Σ_w w B_{w,d}`, the total information weight at distance `d`.
    pub fn info_weight(&self, d: u32) -> u64 {
        self.b
            .get(d as usize)
            .map_or(0, |row| row.iter().enumerate().map(|(w, &c)| w as u64 * c).sum())
    }

    /// `A_0 ..= A_max_d`.
    pub fn distance_counts(&self) -> Vec<u64> {
        (0..=self.max_d).map(|d| self.a(d)).collect()
    }

    /// Smallest `d` with `A_d > 0`, within the truncation.
    pub fn min_weight(&self) -> Option<u32> {
        (0..=self.max_d).find(|&d| self.a(d) > 0)
    }
}

/// Enumerate every detour with output weight `<= max_d` explicitly, depth first.
pub fn detour_enumeration(encoder: &ConvEncoder, max_d: u32) -> Result<WeightSeries> {
    if encoder.is_catastrophic() {
        return Err(Error::Catastrophic);
    }
    let inputs = 1u32 << encoder.k_in();
    let mut counts = BTreeMap::new();
    let mut stack: Vec<(u32, u32, u32)> = Vec::new();
    for u in 1..inputs {
        let (s, out) = encoder.step(0, u);
        stack.push((s, out.count_ones(), u.count_ones()));
    }
    let mut visited = 0u64;
    while let Some((s, d, w)) = stack.pop() {
        visited += 1;
        if visited > MAX_DETOURS_VISITED {
            return Err(Error::Capacity(format!(
                "more than {MAX_DETOURS_VISITED} partial detours"
            )));
        }
        if d > max_d {
            continue;
        }
        if s == 0 {
            *counts.entry((d, w)).or_insert(0) += 1;
            continue;
        }
        for u in 0..inputs {
            let (to, out) = encoder.step(s, u);
            stack.push((to, d + out.count_ones(), w + u.count_ones()));
        }
    }
    Ok(WeightSeries::from_map(max_d, &counts))
}

type Poly2 = BTreeMap<(u32, u32), u64>;

/// Expand `T(W, X) = d0 + c^T (I - A)^{-1} b` as the power series
/// `d0 + Σ_k c^T A^k b`, truncated at `X^max_d`. `A` is the state-transition
/// matrix among nonzero states with entries `X^{out weight} W^{in weight}`.
pub fn transfer_series(encoder: &ConvEncoder, max_d: u32) -> Result<WeightSeries> {
    if encoder.is_catastrophic() {
        return Err(Error::Catastrophic);
    }
    let states = encoder.num_states();
    let inputs = 1u32 << encoder.k_in();
    let mut total: Poly2 = BTreeMap::new();
    let mut x: Vec<Poly2> = vec![BTreeMap::new(); states];
    for u in 1..inputs {
        let (s, out) = encoder.step(0, u);
        let key = (out.count_ones(), u.count_ones());
        if key.0 > max_d {
            continue;
        }
        let target = if s == 0 { &mut total } else { &mut x[s as usize] };
        *target.entry(key).or_insert(0) += 1;
    }
    // Each power of A either raises the X degree of every surviving term or
    // revisits a zero-weight cycle, which non-catastrophic encoders lack.
    let budget = (max_d as usize + 2) * states + 2;
    for _ in 0..budget {
        if x.iter().all(BTreeMap::is_empty) {
            return Ok(WeightSeries::from_map(max_d, &total));
        }
        let mut next: Vec<Poly2> = vec![BTreeMap::new(); states];
        for (s, poly) in x.iter().enumerate().filter(|(s, p)| *s != 0 && !p.is_empty()) {
            for u in 0..inputs {
                let (to, out) = encoder.step(s as u32, u);
                let (dx, dw) = (out.count_ones(), u.count_ones());
                for (&(d, w), &c) in poly {
                    if d + dx > max_d {
                        continue;
                    }
                    let target = if to == 0 { &mut total } else { &mut next[to as usize] };
                    *target.entry((d + dx, w + dw)).or_insert(0) += c;
                }
            }
        }
        x = next;
    }
    Err(Error::Capacity(format!(
        "transfer series did not terminate within {budget} steps"
    )))
}

/// Both weight-enumerator computations, for cross-checking.
#[derive(Debug, Clone)]
pub struct WeightSpectrum {
    pub by_enumeration: WeightSeries,
    pub by_transfer: WeightSeries,
}

impl WeightSpectrum {
    pub fn agree(&self) -> bool {
        self.by_enumeration == self.by_transfer
    }
}

pub fn weight_series(encoder: &ConvEncoder, max_d: u32) -> Result<WeightSpectrum> {
    Ok(WeightSpectrum {
        by_enumeration: detour_enumeration(encoder, max_d)?,
        by_transfer: transfer_series(encoder, max_d)?,
    })
}

/// Numeric transfer matrix among nonzero states at `X = x`, `W = 1`
/// (row = from, column = to, zero state removed).
pub fn transfer_matrix(encoder: &ConvEncoder, x: f64) -> Vec<Vec<f64>> {
    let states = encoder.num_states();
    let inputs = 1u32 << encoder.k_in();
    let mut a = vec![vec![0.0; states.saturating_sub(1)]; states.saturating_sub(1)];
    for s in 1..states {
        for u in 0..inputs {
            let (to, out) = encoder.step(s as u32, u);
            if to != 0 {
                a[s - 1][to as usize - 1] += crate::math::powi(x, out.count_ones() as i32);
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_distances() {
        let e75 = ConvEncoder::from_octal(1, 2, &["7", "5"]).unwrap();
        assert_eq!(free_distance(&e75).unwrap(), 5);
        let id = ConvEncoder::rate_one_over(&[1]).unwrap();
        assert_eq!(free_distance(&id).unwrap(), 1);
        let e = ConvEncoder::from_octal(1, 2, &["2", "3"]).unwrap();
        assert_eq!(free_distance(&e).unwrap(), 3);
        // (15, 17) has d_free = 6, (23, 35) has 7
        let e = ConvEncoder::from_octal(1, 2, &["15", "17"]).unwrap();
        assert_eq!(free_distance(&e).unwrap(), 6);
        let e = ConvEncoder::from_octal(1, 2, &["23", "35"]).unwrap();
        assert_eq!(free_distance(&e).unwrap(), 7);
    }

    #[test]
    fn catastrophic_rejected() {
        let e = ConvEncoder::rate_one_over(&[0b11, 0b101]).unwrap();
        assert_eq!(free_distance(&e), Err(Error::Catastrophic));
        assert_eq!(weight_series(&e, 8).err(), Some(Error::Catastrophic));
    }

    #[test]
    fn spectrum_of_7_5() {
        let e = ConvEncoder::from_octal(1, 2, &["7", "5"]).unwrap();
        let s = weight_series(&e, 12).unwrap();
        assert!(s.agree());
        let a = &s.by_transfer;
        assert_eq!((a.a(5), a.a(6), a.a(7)), (1, 2, 4));
        // T(W, X) = W X^5 / (1 - 2 W X), so B_{w,d} = 2^{d-5} at w = d - 4 only.
        for d in 5..=12 {
            assert_eq!(a.b(d - 4, d), 1 << (d - 5));
            assert_eq!(a.info_weight(d), (d as u64 - 4) << (d - 5));
        }
        assert_eq!(a.min_weight(), Some(5));
    }

    #[test]
    fn identity_encoder_series() {
        let id = ConvEncoder::rate_one_over(&[1]).unwrap();
        let s = weight_series(&id, 5).unwrap();
        assert!(s.agree());
        assert_eq!(s.by_transfer.distance_counts(), vec![0, 1, 0, 0, 0, 0]);
    }
}
