use fecverify_core::bch::{bch_parameters, table_check};
use fecverify_core::gf2::{BinaryPolynomial, ExtensionField};

use crate::probe::Probe;

/// Carry-less product of packed polynomials.
fn clmul(a: u64, b: u64) -> u64 {
    (0..32).filter(|i| b >> i & 1 == 1).fold(0, |acc, i| acc ^ (a << i))
}

fn degree(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

/// Every `f` of degree < 7 and nonzero `g` of degree < 4: the library's
/// quotient and remainder satisfy `f = q g + r`, `deg r < deg g`, and no other
/// quotient of degree < 7 leaves such a remainder.
pub fn division_unique(p: &mut Probe) {
    let (mut identity, mut unique, mut cases) = (true, true, 0u64);
    for f in 0u64..128 {
        for g in 1u64..16 {
            let (q, r) = BinaryPolynomial::from_bits(f)
                .divmod(&BinaryPolynomial::from_bits(g))
                .expect("nonzero divisor");
            let (q, r) = (q.to_bits().unwrap_or(u64::MAX), r.to_bits().unwrap_or(u64::MAX));
            identity &= clmul(q, g) ^ r == f && degree(r) < degree(g);
            let valid = (0u64..128).filter(|&q2| degree(f ^ clmul(q2, g)) < degree(g)).count();
            unique &= valid == 1;
            cases += 1;
        }
    }
    p.note("dividend/divisor pairs", cases);
    p.holds("f = q g + r with deg r < deg g", identity);
    p.holds("exactly one admissible quotient", unique);
}

/// `alpha^i` built by repeated multiplication by `X` modulo the primitive polynomial.
fn alpha_powers(m: u32, primitive: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity((1 << m) - 1);
    let mut x = 1u32;
    for _ in 0..(1u32 << m) - 1 {
        v.push(x);
        x <<= 1;
        if x >> m & 1 == 1 {
            x ^= primitive;
        }
    }
    v
}

fn representation_check(p: &mut Probe, alpha_term: bool) {
    for m in [3, 4, 5, 8] {
        let f = ExtensionField::new(m).expect("supported degree");
        let powers = alpha_powers(m, f.primitive_bits());
        let mut ok = true;
        for (i, &vec) in powers.iter().enumerate() {
            let a = f.alpha_pow(i as i64).coordinates();
            let mut sum = f.zero();
            for (j, &aij) in a.iter().enumerate() {
                if aij == 1 {
                    let basis = if j == 1 && !alpha_term { f.one() } else { f.alpha_pow(j as i64) };
                    sum = sum.add(&basis).expect("same field");
                }
            }
            ok &= sum.vector() == vec && f.alpha_pow(i as i64).vector() == vec;
        }
        p.holds(format!("GF(2^{m}): alpha^i = sum_j a_ij alpha^j for every i"), ok);
    }
}

pub fn element_representation(p: &mut Probe) {
    representation_check(p, true);
}

pub fn element_representation_uncorrected(p: &mut Probe) {
    representation_check(p, false);
}

pub fn nk_mt_large_m(p: &mut Probe) {
    for m in 5..=10 {
        let d = bch_parameters(m, 3).expect("valid design");
        p.equal(format!("m = {m}, t = 3: n - k"), (3 * m) as usize, d.n - d.k);
    }
}

pub fn nk_mt_m4(p: &mut Probe) {
    let d = bch_parameters(4, 3).expect("valid design");
    p.equal("m = 4, t = 3: n - k", 10, d.n - d.k);
    p.holds("n - k != m t", d.n - d.k != 12);
}

pub fn bch_table(p: &mut Probe) {
    match table_check() {
        Ok(rows) => {
            for c in rows {
                let e = c.entry;
                p.equal(format!("({}, {}) k from t = {}", e.n, e.k, e.t), e.k, c.k_from_t);
                p.equal(format!("({}, {}) largest t with this k", e.n, e.k), Some(e.t), c.max_t_for_k);
            }
        }
        Err(err) => {
            p.holds(format!("table recomputation failed: {err}"), false);
        }
    }
}
