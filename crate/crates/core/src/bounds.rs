//! Analytic performance quantities: Gaussian tail, coding gains, pairwise
//! error probabilities, union bounds and where those bounds stop converging.

use alloc::vec::Vec;

use crate::conv::{transfer_matrix, ConvEncoder, WeightSeries};
use crate::math::{erfc, log10, powi, sqrt};
use crate::{invalid, Error, Result};

/// A code rate `k/n`, kept as integers so gain comparisons are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rate {
    pub k: u32,
    pub n: u32,
}

impl Rate {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k == 0 || n == 0 || k > n {
            return Err(invalid("rate must satisfy 0 < k <= n"));
        }
        Ok(Self { k, n })
    }

    pub fn value(self) -> f64 {
        f64::from(self.k) / f64::from(self.n)
    }
}

/// Which asymptotic gain formula is being evaluated. Both share the same
/// expression; the distinction is kept for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GainFlavor {
    BlockSoft,
    ConvSoft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GainQuery {
    pub rate: Rate,
    /// Minimum distance (block) or free distance (convolutional).
    pub d: u32,
    pub flavor: GainFlavor,
}

impl GainQuery {
    pub fn new(rate: Rate, d: u32, flavor: GainFlavor) -> Result<Self> {
        if d == 0 {
            return Err(invalid("distance must be positive"));
        }
        Ok(Self { rate, d, flavor })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `num/den` reduced before the float division, so equal rationals give
/// bit-identical results.
fn ratio(num: u64, den: u64) -> f64 {
    let g = gcd(num, den);
    (num / g) as f64 / (den / g) as f64
}

/// `10 log10(R ⌈d/2⌉)`.
pub fn coding_gain_db(q: GainQuery) -> f64 {
    let c = u64::from(q.d.div_ceil(2));
    10.0 * log10(ratio(u64::from(q.rate.k) * c, u64::from(q.rate.n)))
}

/// `10 log10(R d / 2)`, the form without the ceiling. Only correct for even `d`.
pub fn coding_gain_db_uncorrected(q: GainQuery) -> f64 {
    10.0 * log10(ratio(
        u64::from(q.rate.k) * u64::from(q.d),
        2 * u64::from(q.rate.n),
    ))
}

/// `Q(x) = P(N > x)` for a standard normal `N`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / core::f64::consts::SQRT_2)
}

pub fn db_to_linear(db: f64) -> f64 {
    crate::math::exp(db * core::f64::consts::LN_10 / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * log10(x)
}

/// Uncoded BPSK bit error probability `Q(sqrt(2 Eb/N0))`.
pub fn uncoded_bpsk_ber(ebn0_db: f64) -> f64 {
    q_function(sqrt(2.0 * db_to_linear(ebn0_db)))
}

/// The `Eb/N0` in dB at which uncoded BPSK reaches bit error rate `ber`.
pub fn uncoded_bpsk_ebn0_db(ber: f64) -> Result<f64> {
    if !(ber > 0.0 && ber < 0.5) {
        return Err(invalid("target BER must lie in (0, 1/2)"));
    }
    // Q is decreasing; bisect on x = sqrt(2 Eb/N0).
    let (mut lo, mut hi) = (0.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if q_function(mid) > ber {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok(linear_to_db(x * x / 2.0))
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Exact probability that ML hard-decision decoding on a BSC prefers a
/// weight-`d` competitor to the transmitted word.
///
/// Odd `d`: more than half of the `d` differing positions flipped. Even `d`:
/// ties at exactly `d/2` flips count one half.
pub fn bsc_pairwise(d: u32, p: f64) -> f64 {
    let term = |e: u32| binomial(d, e) * powi(p, e as i32) * powi(1.0 - p, (d - e) as i32);
    let above: f64 = (d / 2 + 1..=d).map(term).sum();
    if d.is_multiple_of(2) {
        above + 0.5 * term(d / 2)
    } else {
        above
    }
}

/// `D = 2 sqrt(p (1 - p))`.
pub fn bhattacharyya_bsc(p: f64) -> f64 {
    2.0 * sqrt(p * (1.0 - p))
}

/// `Σ_d A_d P_d` on a BSC.
pub fn union_bound_bsc(series: &WeightSeries, p: f64) -> f64 {
    (1..=series.max_d)
        .map(|d| series.a(d) as f64 * bsc_pairwise(d, p))
        .sum()
}

/// `Σ_d A_d D^d` on a BSC.
pub fn union_bound_bsc_bhattacharyya(series: &WeightSeries, p: f64) -> f64 {
    let dd = bhattacharyya_bsc(p);
    (1..=series.max_d)
        .map(|d| series.a(d) as f64 * powi(dd, d as i32))
        .sum()
}

/// `(1/k) Σ_d (Σ_w w B_{w,d}) P_d` on a BSC.
pub fn bit_union_bound_bsc(series: &WeightSeries, k_in: u32, p: f64) -> f64 {
    (1..=series.max_d)
        .map(|d| series.info_weight(d) as f64 * bsc_pairwise(d, p))
        .sum::<f64>()
        / f64::from(k_in)
}

/// `Σ_d A_d Q(sqrt(2 d R Eb/N0))` for soft-decision BPSK on AWGN.
pub fn union_bound_awgn(series: &WeightSeries, rate: Rate, ebn0_db: f64) -> f64 {
    let g = 2.0 * rate.value() * db_to_linear(ebn0_db);
    (1..=series.max_d)
        .map(|d| series.a(d) as f64 * q_function(sqrt(g * f64::from(d))))
        .sum()
}

/// The smallest `p` whose Bhattacharyya parameter reaches `rho`, i.e. the
/// solution of `2 sqrt(p(1-p)) = rho`. Radii of 1 or more never diverge on a
/// BSC and map to the `1/2` sentinel.
pub fn threshold_from_radius(rho: f64) -> f64 {
    if rho >= 1.0 {
        0.5
    } else {
        (1.0 - sqrt(1.0 - rho * rho)) / 2.0
    }
}

/// Where `Σ A_d D^d` stops converging.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceThreshold {
    /// Radius of convergence of the weight series in `X`.
    pub rho: f64,
    /// `p*` with `bhattacharyya_bsc(p*) = rho`.
    pub p_star: f64,
    /// Half-width of the uncertainty on `rho`, `0` when it is known exactly.
    pub rho_error: f64,
    /// Set when `rho` comes from a coefficient extrapolation.
    pub advisory: bool,
}

impl DivergenceThreshold {
    fn exact(rho: f64) -> Self {
        Self {
            rho,
            p_star: threshold_from_radius(rho),
            rho_error: 0.0,
            advisory: false,
        }
    }
}

/// A weight enumerator `N(X) / Q(X)` with coefficients in increasing powers.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalWef {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

fn eval(poly: &[f64], x: f64) -> f64 {
    poly.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

impl RationalWef {
    pub fn new(numerator: Vec<f64>, denominator: Vec<f64>) -> Result<Self> {
        if denominator.first().is_none_or(|&c| c == 0.0) {
            return Err(invalid("denominator must have a nonzero constant term"));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    /// Smallest positive real root of the denominator in `(0, 1]`, found by
    /// a sign-change scan and bisection. Series with nonnegative coefficients
    /// have their nearest singularity on the positive axis, so this is the
    /// radius of convergence unless the numerator cancels it.
    pub fn radius(&self) -> f64 {
        const STEPS: usize = 100_000;
        let f = |x: f64| eval(&self.denominator, x);
        let mut prev = f(0.0);
        for i in 1..=STEPS {
            let x = i as f64 / STEPS as f64;
            let v = f(x);
            if v == 0.0 {
                return x;
            }
            if (v < 0.0) != (prev < 0.0) {
                let (mut lo, mut hi) = ((i - 1) as f64 / STEPS as f64, x);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if (f(mid) < 0.0) == (prev < 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5 * (lo + hi);
            }
            prev = v;
        }
        f64::INFINITY
    }

    pub fn divergence_threshold(&self) -> DivergenceThreshold {
        if self.denominator.len() == 1 {
            return DivergenceThreshold::exact(f64::INFINITY);
        }
        DivergenceThreshold::exact(self.radius())
    }
}

/// Radius estimate from the tail of a truncated series: root-ratio estimates
/// `(A_d / A_d')^{1/(d'-d)}` over consecutive nonzero coefficients in the
/// upper half of the range; the spread of the last few is the error bar. A
/// series with at most one nonzero term is treated as a polynomial.
pub fn series_divergence_threshold(series: &WeightSeries) -> DivergenceThreshold {
    let nz: Vec<(u32, f64)> = (1..=series.max_d)
        .filter(|&d| series.a(d) > 0)
        .map(|d| (d, series.a(d) as f64))
        .collect();
    if nz.len() <= 1 {
        return DivergenceThreshold::exact(f64::INFINITY);
    }
    let half = series.max_d / 2;
    let estimates: Vec<f64> = nz
        .windows(2)
        .filter(|w| w[0].0 >= half)
        .map(|w| libm::pow(w[0].1 / w[1].1, 1.0 / f64::from(w[1].0 - w[0].0)))
        .collect();
    let tail = &estimates[estimates.len().saturating_sub(4)..];
    let (rho, err) = match tail {
        [] => {
            let (a, b) = (nz[nz.len() - 2], nz[nz.len() - 1]);
            (libm::pow(a.1 / b.1, 1.0 / f64::from(b.0 - a.0)), f64::INFINITY)
        }
        _ => {
            let last = tail[tail.len() - 1];
            let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = tail.iter().copied().fold(0.0, f64::max);
            (last, (hi - lo).max(0.0))
        }
    };
    DivergenceThreshold {
        rho,
        p_star: threshold_from_radius(rho),
        rho_error: err,
        advisory: true,
    }
}

/// Spectral radius of a nonnegative square matrix, bracketed by
/// Collatz-Wielandt bounds from power iteration on `A + I` (the shift makes
/// the iteration converge for periodic matrices too).
pub fn spectral_radius(a: &[Vec<f64>]) -> (f64, f64) {
    let n = a.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mut v = alloc::vec![1.0; n];
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    for _ in 0..10_000 {
        let w: Vec<f64> = (0..n)
            .map(|i| v[i] + (0..n).map(|j| a[i][j] * v[j]).sum::<f64>())
            .collect();
        let ratios = w.iter().zip(&v).map(|(x, y)| x / y);
        lo = ratios.clone().fold(f64::INFINITY, f64::min);
        hi = ratios.fold(0.0, f64::max);
        let norm = w.iter().copied().fold(0.0, f64::max);
        v = w.iter().map(|x| x / norm).collect();
        if hi - lo < 1e-13 * hi {
            break;
        }
    }
    (lo - 1.0, hi - 1.0)
}

/// Radius of convergence of an encoder's weight enumerator `T(X)`: the `x`
/// at which the spectral radius of the transfer matrix among nonzero states
/// reaches 1, found by bisection.
pub fn encoder_divergence_threshold(encoder: &ConvEncoder) -> Result<DivergenceThreshold> {
    if encoder.is_catastrophic() {
        return Err(Error::Catastrophic);
    }
    if encoder.num_states() == 1 {
        return Ok(DivergenceThreshold::exact(f64::INFINITY));
    }
    let radius_at = |x: f64| spectral_radius(&transfer_matrix(encoder, x));
    if radius_at(1.0).1 < 1.0 {
        return Ok(DivergenceThreshold::exact(f64::INFINITY));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (l, h) = radius_at(mid);
        if h < 1.0 {
            lo = mid;
        } else if l >= 1.0 {
            hi = mid;
        } else {
            lo = mid;
            hi = mid;
            break;
        }
    }
    let rho = 0.5 * (lo + hi);
    Ok(DivergenceThreshold {
        rho,
        p_star: threshold_from_radius(rho),
        rho_error: 0.5 * (hi - lo),
        advisory: false,
    })
}
