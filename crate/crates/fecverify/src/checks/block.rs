use fecverify_core::blockcode::{incomplete_product, product_correction_radius, LinearBlockCode, ProductCode};
use rand::Rng;

use super::oracle::rng;
use crate::probe::Probe;

fn small_codes() -> Vec<(&'static str, LinearBlockCode)> {
    vec![
        ("identity(2)", LinearBlockCode::identity(2).expect("valid")),
        ("repetition(2)", LinearBlockCode::repetition(2).expect("valid")),
        ("repetition(3)", LinearBlockCode::repetition(3).expect("valid")),
        ("spc(2)", LinearBlockCode::single_parity_check(2).expect("valid")),
        ("spc(3)", LinearBlockCode::single_parity_check(3).expect("valid")),
        ("hamming74", LinearBlockCode::hamming74()),
        // d = 2 is reached only by the sum of both rows.
        ("(5,2) no unit-weight minimum", LinearBlockCode::systematic(2, 3, &[0b111, 0b111]).expect("valid")),
    ]
}

/// For every received word, the decision's distance against every codeword.
/// `strict` demands the decision be strictly closer than every other codeword.
fn ml_check(p: &mut Probe, strict: bool) {
    let mut ties = 0u64;
    for (name, code) in small_codes() {
        let words: Vec<u64> = (0..1u64 << code.k()).map(|m| code.encode_packed(m)).collect();
        let mut ok = true;
        for r in 0..1u64 << code.n() {
            let (_, w) = code.ml_decode_hard_packed(r).expect("enumerable");
            let dw = (w ^ r).count_ones();
            for &c in words.iter().filter(|&&c| c != w) {
                let dc = (c ^ r).count_ones();
                ok &= if strict { dw < dc } else { dw <= dc };
                ties += u64::from(dw == dc);
            }
        }
        p.holds(format!("{name}: decision {} every other codeword", if strict { "strictly closer than" } else { "at least as close as" }), ok);
    }
    p.note("received words with a tied competitor", ties);
}

pub fn ml_at_least_as_close(p: &mut Probe) {
    ml_check(p, false);
}

pub fn ml_strictly_closer(p: &mut Probe) {
    ml_check(p, true);
}

/// Guaranteed correction radius of real product codes, from their enumerated
/// minimum distance, against the bracket formula.
fn radius_check(p: &mut Probe, formula: fn(u32, u32) -> u32) {
    let codes = small_codes();
    for (na, a) in &codes {
        for (nb, b) in &codes {
            let Ok(prod) = ProductCode::new(a.clone(), b.clone()) else { continue };
            let code = prod.to_linear_code().expect("valid product");
            if code.k() > 16 {
                continue;
            }
            let d = code.min_distance().expect("enumerable");
            let (d1, d2) = (a.min_distance().expect("enumerable"), b.min_distance().expect("enumerable"));
            p.equal(format!("{na} x {nb}: radius"), (d - 1) / 2, formula(d1, d2));
        }
    }
}

pub fn product_radius_floor(p: &mut Probe) {
    radius_check(p, product_correction_radius);
    let mut ok = true;
    for d1 in 1..=12u32 {
        for d2 in 1..=12u32 {
            ok &= product_correction_radius(d1, d2) == ((f64::from(d1 * d2) - 1.0) / 2.0).floor() as u32;
        }
    }
    p.holds("formula equals floor((d1 d2 - 1)/2) for d1, d2 <= 12", ok);
}

pub fn product_radius_rounded(p: &mut Probe) {
    radius_check(p, |d1, d2| ((f64::from(d1 * d2) - 1.0) / 2.0).round() as u32);
}

fn random_systematic(r: &mut rand_chacha::ChaCha8Rng) -> LinearBlockCode {
    let k = r.random_range(1..=3);
    let red = r.random_range(1..=3);
    let parity: Vec<u64> = (0..k).map(|_| r.random_range(0..1u64 << red)).collect();
    LinearBlockCode::systematic(k, red, &parity).expect("valid")
}

/// Without `exact`, checks `d >= d1 + d2 - 1` and the equality condition;
/// with it, asserts `d = d1 + d2 - 1` outright.
fn bound_check(p: &mut Probe, exact: bool) {
    let mut pairs: Vec<(LinearBlockCode, LinearBlockCode)> = Vec::new();
    let codes = small_codes();
    for (_, a) in &codes {
        for (_, b) in &codes {
            pairs.push((a.clone(), b.clone()));
        }
    }
    let mut r = rng(0x131);
    pairs.extend((0..150).map(|_| (random_systematic(&mut r), random_systematic(&mut r))));
    let (mut meets, mut iff, mut equal, mut above) = (true, true, true, 0u64);
    for (a, b) in &pairs {
        let Ok(rep) = incomplete_product(a, b) else { continue };
        meets &= rep.meets_bound();
        equal &= rep.attains_bound();
        above += u64::from(rep.d_min > rep.bound);
        if rep.d1 >= 2 && rep.d2 >= 2 {
            iff &= rep.attains_bound() == rep.unit_weight_condition;
        }
    }
    p.note("pairs", pairs.len());
    p.note("pairs strictly above the bound", above);
    if exact {
        p.holds("d = d1 + d2 - 1 for every pair", equal);
    } else {
        p.holds("d >= d1 + d2 - 1 for every pair", meets);
        p.holds("equality iff both codes have a unit-information minimum codeword (d1, d2 >= 2)", iff);
    }
}

pub fn incomplete_product_bound(p: &mut Probe) {
    bound_check(p, false);
}

pub fn incomplete_product_exact(p: &mut Probe) {
    bound_check(p, true);
}
