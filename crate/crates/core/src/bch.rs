//! Primitive narrow-sense binary BCH codes: generator polynomials and dimensions.

use alloc::vec::Vec;

use crate::blockcode::LinearBlockCode;
use crate::gf2::{BinaryPolynomial, ExtensionField};
use crate::{invalid, Result};

/// A primitive BCH code of length `2^m - 1` with designed error-correcting
/// capability `t`.
#[derive(Debug, Clone)]
pub struct BchDesign {
    pub m: u32,
    pub n: usize,
    pub t: u32,
    pub generator: BinaryPolynomial,
    pub k: usize,
}

impl BchDesign {
    pub fn designed_distance(&self) -> u32 {
        2 * self.t + 1
    }

    /// `n - k == m t`.
    pub fn redundancy_is_mt(&self) -> bool {
        self.n - self.k == (self.m * self.t) as usize
    }

    /// Non-systematic cyclic generator matrix, rows `X^i g(X)` for `i < k`.
    pub fn to_block_code(&self) -> Result<LinearBlockCode> {
        let g = self
            .generator
            .to_bits()
            .ok_or_else(|| invalid("generator degree exceeds 63"))?;
        if self.n > 64 {
            return Err(invalid("block code view needs n <= 64"));
        }
        LinearBlockCode::from_rows(self.n, (0..self.k).map(|i| g << i).collect())
    }
}

fn check_range(m: u32, t: u32) -> Result<()> {
    if !(2..=10).contains(&m) {
        return Err(invalid("m must be in 2..=10"));
    }
    if t == 0 || t >= 1 << (m - 1) {
        return Err(invalid("t must satisfy 1 <= t < 2^(m-1)"));
    }
    Ok(())
}

/// Generator `g(X) = lcm{φ_1, φ_2, ..., φ_{2t}}` of minimal polynomials of
/// `α, α^2, ..., α^{2t}` and the resulting dimension `k = n - deg g`.
pub fn bch_parameters(m: u32, t: u32) -> Result<BchDesign> {
    check_range(m, t)?;
    let field = ExtensionField::new(m)?;
    bch_in_field(&field, t)
}

/// As [`bch_parameters`], in a caller-supplied field.
pub fn bch_in_field(field: &ExtensionField, t: u32) -> Result<BchDesign> {
    check_range(field.m(), t)?;
    let n = field.order();
    let mut generator = BinaryPolynomial::one();
    for i in 1..=2 * t as i64 {
        let phi = field.alpha_pow(i).minimal_polynomial()?;
        generator = generator.lcm(&phi);
    }
    let deg = generator.degree().expect("lcm of nonzero polynomials");
    Ok(BchDesign {
        m: field.m(),
        n,
        t,
        generator,
        k: n - deg,
    })
}

/// Whether `n - k = m t` for the `(m, t)` design.
pub fn verify_nk_equals_mt(m: u32, t: u32) -> Result<bool> {
    Ok(bch_parameters(m, t)?.redundancy_is_mt())
}

/// Dimensions `k(t)` for `t = 1..2^(m-1)`, computed from cyclotomic coset
/// sizes alone (`deg g` is the total size of the distinct cosets met by
/// `1..=2t`). Index `t - 1` holds `k(t)`.
pub fn dimension_table(m: u32) -> Result<Vec<usize>> {
    check_range(m, 1)?;
    let field = ExtensionField::new(m)?;
    let n = field.order();
    let mut covered = alloc::vec![false; n];
    let mut degree = 0usize;
    let mut out = Vec::new();
    for t in 1..(1usize << (m - 1)) {
        for i in [2 * t - 1, 2 * t] {
            if !covered[i % n] {
                let coset = field.cyclotomic_coset(i);
                for &c in &coset {
                    covered[c] = true;
                }
                degree += coset.len();
            }
        }
        out.push(n - degree);
    }
    Ok(out)
}

/// Largest designed `t` whose code has dimension exactly `k`, if any.
pub fn max_t_for_dimension(m: u32, k: usize) -> Result<Option<u32>> {
    Ok(dimension_table(m)?
        .iter()
        .rposition(|&kk| kk == k)
        .map(|i| i as u32 + 1))
}

/// One `(n, k, t)` row of the published primitive BCH table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableEntry {
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub t: u32,
}

/// Result of recomputing one [`TableEntry`] in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableEntryCheck {
    pub entry: TableEntry,
    /// `k` recomputed from the listed `t` via the generator polynomial.
    pub k_from_t: usize,
    /// Largest `t` with dimension `k`.
    pub max_t_for_k: Option<u32>,
}

impl TableEntryCheck {
    pub fn matches(&self) -> bool {
        self.k_from_t == self.entry.k && self.max_t_for_k == Some(self.entry.t)
    }
}

/// The eight corrected `(n, k, t)` entries for n = 255, 511 and 1023.
pub const CORRECTED_TABLE_ENTRIES: [TableEntry; 8] = [
    TableEntry { m: 8, n: 255, k: 139, t: 15 },
    TableEntry { m: 8, n: 255, k: 131, t: 18 },
    TableEntry { m: 8, n: 255, k: 123, t: 19 },
    TableEntry { m: 8, n: 255, k: 115, t: 21 },
    TableEntry { m: 8, n: 255, k: 107, t: 22 },
    TableEntry { m: 8, n: 255, k: 99, t: 23 },
    TableEntry { m: 9, n: 511, k: 10, t: 127 },
    TableEntry { m: 10, n: 1023, k: 16, t: 247 },
];

pub fn check_table_entry(entry: TableEntry) -> Result<TableEntryCheck> {
    let design = bch_parameters(entry.m, entry.t)?;
    Ok(TableEntryCheck {
        entry,
        k_from_t: design.k,
        max_t_for_k: max_t_for_dimension(entry.m, entry.k)?,
    })
}

/// Recompute every corrected table entry.
pub fn table_check() -> Result<Vec<TableEntryCheck>> {
    CORRECTED_TABLE_ENTRIES
        .iter()
        .map(|&e| check_table_entry(e))
        .collect()
}
