use fecverify_core::bounds::{
    bsc_pairwise, coding_gain_db, coding_gain_db_uncorrected, encoder_divergence_threshold, threshold_from_radius,
    GainFlavor, GainQuery, Rate,
};
use fecverify_core::conv::{free_distance, transfer_series, weight_series, ConvEncoder};

use crate::probe::Probe;

const RATES: [(u32, u32); 6] = [(1, 1), (1, 2), (1, 3), (2, 3), (4, 7), (11, 15)];

fn query(k: u32, n: u32, d: u32, flavor: GainFlavor) -> GainQuery {
    GainQuery::new(Rate::new(k, n).expect("valid rate"), d, flavor).expect("positive distance")
}

/// `P_d` by enumerating all `2^d` error patterns; ties count half.
fn pairwise_by_patterns(d: u32, p: f64) -> f64 {
    (0u32..1 << d)
        .map(|e| {
            let w = e.count_ones();
            let prob = p.powi(w as i32) * (1.0 - p).powi((d - w) as i32);
            match (2 * w).cmp(&d) {
                std::cmp::Ordering::Greater => prob,
                std::cmp::Ordering::Equal => prob / 2.0,
                std::cmp::Ordering::Less => 0.0,
            }
        })
        .sum()
}

/// Exponent of `P_d(p)` as `p -> 0`, measured between two tiny crossovers.
fn small_p_exponent(d: u32) -> f64 {
    let (p1, p2) = (1e-7, 1e-8);
    (pairwise_by_patterns(d, p1) / pairwise_by_patterns(d, p2)).ln() / (p1 / p2).ln()
}

/// Shared assertions: the formula against `10 log10(R t)` where `t` is the
/// small-p exponent of the pairwise error probability, which is `ceil(d/2)`.
fn gain_check(p: &mut Probe, flavor: GainFlavor, gain: fn(GainQuery) -> f64) {
    let mut errs = Vec::new();
    let mut exponent_errs = Vec::new();
    for d in 1..=99u32 {
        let t = f64::from(d.div_ceil(2));
        if d <= 15 {
            exponent_errs.push((small_p_exponent(d) - implied_exponent(gain, d)).abs());
        }
        for (k, n) in RATES {
            let oracle = 10.0 * (f64::from(k) * t / f64::from(n)).log10();
            errs.push((gain(query(k, n, d, flavor)) - oracle).abs());
        }
    }
    p.max_error("gain vs 10 log10(R ceil(d/2)) for d <= 99", errs, 1e-12);
    p.max_error("implied error exponent vs enumerated P_d exponent, d <= 15", exponent_errs, 1e-3);
    p.close("d = 1, R = 1", 0.0, gain(query(1, 1, 1, flavor)), 0.0);
}

/// The distance term `R * x` a gain formula uses, read back as an exponent.
fn implied_exponent(gain: fn(GainQuery) -> f64, d: u32) -> f64 {
    10f64.powf(gain(query(1, 1, d, GainFlavor::BlockSoft)) / 10.0)
}

fn parity_property(p: &mut Probe, flavor: GainFlavor) {
    let mut ok = true;
    for d in 1..=99 {
        for (k, n) in RATES {
            let q = query(k, n, d, flavor);
            ok &= (coding_gain_db(q) == coding_gain_db_uncorrected(q)) == (d % 2 == 0);
        }
    }
    p.holds("corrected == uncorrected iff d even, d <= 99", ok);
    p.close("uncorrected gain at d = 1, R = 1", -3.01, coding_gain_db_uncorrected(query(1, 1, 1, flavor)), 0.01);
}

pub fn block_gain(p: &mut Probe) {
    gain_check(p, GainFlavor::BlockSoft, coding_gain_db);
    parity_property(p, GainFlavor::BlockSoft);
}

pub fn block_gain_uncorrected(p: &mut Probe) {
    let r = 0.5f64;
    p.close(
        "d = 3, R = 1/2: 10 log10(2R)",
        10.0 * (2.0 * r).log10(),
        coding_gain_db_uncorrected(query(1, 2, 3, GainFlavor::BlockSoft)),
        1e-12,
    );
    gain_check(p, GainFlavor::BlockSoft, coding_gain_db_uncorrected);
}

fn conv_examples(p: &mut Probe, gain: fn(GainQuery) -> f64) {
    for g in [["7", "5"], ["23", "35"]] {
        let e = ConvEncoder::from_octal(1, 2, &g).expect("valid octal");
        let d = free_distance(&e).expect("non-catastrophic");
        let t = f64::from(d.div_ceil(2));
        p.close(
            format!("({}, {}) d_free = {d}", g[0], g[1]),
            10.0 * (0.5 * t).log10(),
            gain(query(1, 2, d, GainFlavor::ConvSoft)),
            1e-12,
        );
    }
}

pub fn conv_gain(p: &mut Probe) {
    conv_examples(p, coding_gain_db);
    gain_check(p, GainFlavor::ConvSoft, coding_gain_db);
    parity_property(p, GainFlavor::ConvSoft);
}

pub fn conv_gain_uncorrected(p: &mut Probe) {
    conv_examples(p, coding_gain_db_uncorrected);
    gain_check(p, GainFlavor::ConvSoft, coding_gain_db_uncorrected);
}

const BSC_GRID: [f64; 5] = [1e-4, 1e-3, 0.01, 0.05, 0.2];

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

fn pairwise_check(p: &mut Probe, coefficient: impl Fn(u32) -> f64) {
    let mut errs = Vec::new();
    for q in BSC_GRID {
        let exact = pairwise_by_patterns(7, q);
        let closed: f64 = (4..=7).map(|e| coefficient(e) * q.powi(e as i32) * (1.0 - q).powi(7 - e as i32)).sum();
        errs.push((closed - exact).abs() / exact);
        errs.push((bsc_pairwise(7, q) - exact).abs() / exact);
    }
    p.max_error("relative error of P_7 vs 2^7 pattern enumeration", errs, 1e-12);
}

pub fn pairwise_binomial(p: &mut Probe) {
    pairwise_check(p, |e| binomial(7, e));
}

pub fn pairwise_fixed_binomial(p: &mut Probe) {
    pairwise_check(p, |_| binomial(7, 3));
}

fn library() -> Vec<(usize, usize, Vec<&'static str>)> {
    vec![
        (1, 2, vec!["7", "5"]),
        (1, 2, vec!["7", "6"]),
        (1, 2, vec!["15", "17"]),
        (1, 2, vec!["13", "17"]),
        (1, 2, vec!["23", "35"]),
        (1, 2, vec!["31", "33"]),
        (1, 2, vec!["53", "75"]),
        (1, 2, vec!["133", "171"]),
        (1, 3, vec!["5", "7", "7"]),
        (1, 3, vec!["13", "15", "17"]),
        (1, 3, vec!["25", "33", "37"]),
        (2, 3, vec!["3", "1", "3", "1", "2", "2"]),
    ]
}

fn name(g: &[&str]) -> String {
    format!("({})", g.join(","))
}

/// Weight series of the library encoders by transfer matrix and by detour
/// search; the (7,5) series against its closed form `X^5 / (1 - 2X)`.
pub fn series_oracle(p: &mut Probe) {
    for (k, n, g) in library() {
        let e = ConvEncoder::from_octal(k, n, &g).expect("valid octal");
        let d = free_distance(&e).expect("non-catastrophic");
        let s = weight_series(&e, d + 4).expect("bounded search");
        p.holds(format!("{} series agree to d_free + 4", name(&g)), s.agree());
    }
    let e = ConvEncoder::from_octal(1, 2, &["7", "5"]).expect("valid octal");
    let s = transfer_series(&e, 30).expect("bounded search");
    let closed: Vec<u64> = (0..=30).map(|d| if d < 5 { 0 } else { 1 << (d - 5) }).collect();
    p.equal("(7,5) A_d vs 2^(d-5)", closed, s.distance_counts());
}

/// Divergence thresholds over the library; no target encoder is named.
pub fn threshold_search(p: &mut Probe) {
    let target: f64 = 0.055;
    let rho_target = 2.0 * (target * (1.0 - target)).sqrt();
    p.note("radius implied by p* = 0.055", rho_target);
    p.close("threshold_from_radius round trip", target, threshold_from_radius(rho_target), 1e-12);
    let mut best: Option<(String, f64)> = None;
    for (k, n, g) in library() {
        let e = ConvEncoder::from_octal(k, n, &g).expect("valid octal");
        let t = encoder_divergence_threshold(&e).expect("non-catastrophic");
        p.note(format!("{} p*", name(&g)), t.p_star);
        if best.as_ref().is_none_or(|b| (t.p_star - target).abs() < (b.1 - target).abs()) {
            best = Some((name(&g), t.p_star));
        }
    }
    let (who, ps) = best.expect("nonempty library");
    p.note("closest encoder", who);
    p.close("closest p* to 0.055", target, ps, 5e-4);
}
