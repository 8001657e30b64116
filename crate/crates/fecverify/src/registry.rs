//! Errata records, one per correction, sorted by page.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::HarnessError;

/// How far a correction can be verified by computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Category {
    FormulaVerified,
    NumericVerified,
    ContextMissing,
    Textual,
}

impl Category {
    pub const ALL: [Category; 4] = [
        Category::FormulaVerified,
        Category::NumericVerified,
        Category::ContextMissing,
        Category::Textual,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::FormulaVerified => "FORMULA_VERIFIED",
            Category::NumericVerified => "NUMERIC_VERIFIED",
            Category::ContextMissing => "CONTEXT_MISSING",
            Category::Textual => "TEXTUAL",
        }
    }

    pub fn is_verified(self) -> bool {
        matches!(self, Category::FormulaVerified | Category::NumericVerified)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| HarnessError::UnknownCategory {
                given: s.to_string(),
                allowed: Category::ALL.map(Category::as_str).join(", "),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ErratumRecord {
    pub id: &'static str,
    /// First page the correction touches; the sort key.
    pub page: u32,
    pub location: &'static str,
    pub category: Category,
    pub summary: &'static str,
    /// Ids of the checks bound to this record.
    pub checks: &'static [&'static str],
}

/// Number of corrections, fixed when the registry was built.
pub const RECORD_COUNT: usize = 75;

/// Checked-in list of record ids, one per line.
pub const MANIFEST: &str = include_str!("../data/manifest.txt");

pub fn manifest_ids() -> Vec<&'static str> {
    MANIFEST
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

macro_rules! rec {
    ($id:literal, $page:literal, $loc:literal, $cat:ident, $summary:literal $(, $check:literal)* $(,)?) => {
        ErratumRecord {
            id: $id,
            page: $page,
            location: $loc,
            category: Category::$cat,
            summary: $summary,
            checks: &[$($check),*],
        }
    };
}

pub static RECORDS: [ErratumRecord; RECORD_COUNT] = [
    rec!("p004-l5", 4, "p. 4", Textual, "redundancy does not grow with memory order"),
    rec!("p009-eq1.6", 9, "p. 9", FormulaVerified, "AWGN branch metric uses squared distances (y -/+ sqrt(Es))^2", "p009-eq1.6/metric"),
    rec!("p010-l6", 10, "p. 10", Textual, "bandwidth expression 1/(2T)"),
    rec!("p012-eq1.12", 12, "p. 12", FormulaVerified, "soft-decision likelihood p(r|v) is a density, not a probability", "p012-eq1.12/density"),
    rec!("p018-eq1.21", 18, "p. 18", FormulaVerified, "asymptotic block coding gain 10 log10(R ceil(d/2))", "p018-eq1.21/gain"),
    rec!("p019-fig1.11", 19, "pp. 19, 21", Textual, "figure legend naming for the coded BPSK curves"),
    rec!("p020-tab1.2", 20, "p. 20", ContextMissing, "table entry 3.91 -> 3.89; entries within 0.014 dB of exact values"),
    rec!("p021-l6b", 21, "p. 21", Textual, "spectral efficiency expressed as (R/T)/W"),
    rec!("p038-l17", 38, "p. 38", Textual, "the equations are solved uniquely"),
    rec!("p040-division", 40, "p. 40", NumericVerified, "name of the polynomial division theorem; quotient and remainder are unique", "p040-division/uniqueness"),
    rec!("p045-eq2.19c", 45, "p. 45", FormulaVerified, "alpha^i = a_i0 + a_i1 alpha + ... + a_i,m-1 alpha^(m-1)", "p045-eq2.19c/representation"),
    rec!("p053-l3b", 53, "p. 53", Textual, "field for the conjugacy example is GF(2^4)"),
    rec!("p067-eq3.3", 67, "p. 67", Textual, "boldface message vector in v = u G"),
    rec!("p081-l2", 81, "p. 81", FormulaVerified, "ML decision is at least as close as every other codeword (ties allowed)", "p081-l2/ties"),
    rec!("p089-fig3.8", 89, "p. 89", Textual, "last syndrome register stage index is n-k-1"),
    rec!("p089-ex3.9", 89, "p. 89", Textual, "logical AND symbol"),
    rec!("p097-ref3", 97, "p. 97", Textual, "citation"),
    rec!("p130-l6", 130, "p. 130", Textual, "columns and rows swapped"),
    rec!("p130-l9", 130, "p. 130", FormulaVerified, "product code corrects floor((d1 d2 - 1)/2) errors", "p130-l9/radius"),
    rec!("p131-d1d2", 131, "p. 131", FormulaVerified, "distance is at least d1 + d2 - 1, with equality only under a condition", "p131-d1d2/bound"),
    rec!("p134-ref7", 134, "p. 134", Textual, "citation"),
    rec!("p142-l11", 142, "p. 142", Textual, "word order in a shift-register description"),
    rec!("p143-tab5.2", 143, "p. 143", ContextMissing, "table polynomial 1+X^2+X^5 -> 1+X^2+X^3"),
    rec!("p147-fig5.1", 147, "p. 147", Textual, "figure label g1 X"),
    rec!("p151-l4", 151, "p. 151", Textual, "redundant step removed"),
    rec!("p190-prob5.12", 190, "p. 190", Textual, "boldface error polynomial"),
    rec!("p195-nk-mt", 195, "p. 195", NumericVerified, "n - k = m t holds for t = 3 when m >= 5 but not m = 4", "p195-nk-mt/m5-10", "p195-nk-mt/m4"),
    rec!("p196-tab6.1", 196, "p. 196", NumericVerified, "primitive BCH (n, k, t) entries for n = 255, 511, 1023", "p196-tab6.1/entries"),
    rec!("p233-ref25", 233, "p. 233", Textual, "citation"),
    rec!("p344-phi", 344, "p. 344", Textual, "empty-set symbol in place of phi"),
    rec!("p439-l3", 439, "p. 439", Textual, "section cross-reference"),
    rec!("p461-eq11.26a", 461, "p. 461", Textual, "D-domain output vector superscripts"),
    rec!("p466-l1", 466, "p. 466", Textual, "boldface vector notation"),
    rec!("p483-l6", 483, "p. 483", Textual, "inequality symbol"),
    rec!("p487-eq11.95", 487, "p. 487", Textual, "index notation"),
    rec!("p487-eq11.96", 487, "p. 487", Textual, "index notation"),
    rec!("p493-l9", 493, "p. 493", Textual, "problem cross-reference"),
    rec!("p499-l2", 499, "p. 499", Textual, "quantifier ranges over d only"),
    rec!("p500-eq11.134", 500, "p. 500", Textual, "IOWEF summation over w only"),
    rec!("p511-prob11.3b", 511, "p. 511", Textual, "input sequence of a problem"),
    rec!("p517-l4", 517, "p. 517", Textual, "log-likelihood written with the density p"),
    rec!("p522-l8", 522, "p. 522", Textual, "equation cross-reference"),
    rec!("p525-eq12.15", 525, "p. 525", ContextMissing, "weight enumerator factor (1+X^2 L)^2 of an undefined example encoder", "p525-eq12.15/series"),
    rec!("p526-eq12.16", 526, "p. 526", FormulaVerified, "pairwise BSC error sum uses binom(7, e)", "p526-eq12.16/binomial"),
    rec!("p528-fig12.9", 528, "p. 528", Textual, "labelling of three paths in a figure"),
    rec!("p532-eq12.38", 532, "p. 532", FormulaVerified, "asymptotic convolutional coding gain 10 log10(R ceil(d_free/2))", "p532-eq12.38/gain"),
    rec!("p554-l14", 554, "p. 554", Textual, "numeric factor in prose"),
    rec!("p559-eq12.86", 559, "pp. 559-560", FormulaVerified, "partial path metric at time t sums branches 0..=t", "p559-eq12.86/partial-metrics"),
    rec!("p559-eq12.89", 559, "p. 559", FormulaVerified, "a-priori metric term 2 ln P(U=b) - C = b L_a", "p559-eq12.89/apriori-term"),
    rec!("p561-eq12.99", 561, "p. 561", FormulaVerified, "SOVA metric difference scaled by c/2", "p561-eq12.99/half-scaling"),
    rec!("p561-eq12.91", 561, "p. 561", Textual, "a-posteriori L-values depend on r and l only"),
    rec!("p562-eq12.104", 562, "p. 562", FormulaVerified, "SOVA update min(Delta, L) only where the competitor bit differs; new positions start at infinity", "p562-eq12.104/sova-oracle", "p562-eq12.104/figure-row"),
    rec!("p564-density", 564, "pp. 564-565", Textual, "P(r) read as the density p(r)"),
    rec!("p567-eq12.123", 567, "p. 567", FormulaVerified, "P(U=b) = A e^(b L_a/2) with A = sqrt(P+ P-)", "p567-eq12.123/factorization"),
    rec!("p576-eq12.142", 576, "p. 576", NumericVerified, "max-log backward values 3.30 and 2.30", "p576-eq12.142/beta"),
    rec!("p576-eq12.143", 576, "p. 576", NumericVerified, "max-log L-values -0.10 and +0.10", "p576-eq12.143/lvalues"),
    rec!("p585-tailbiting", 585, "pp. 585-586", Textual, "tail-biting vs unterminated terminology"),
    rec!("p598-prob12.1", 598, "p. 598", Textual, "problem refers to an encoder rather than a code"),
    rec!("p599-prob12.10", 599, "p. 599", ContextMissing, "union bound divergence at p >= 0.055 for an unnamed encoder", "p599-prob12.10/threshold-search"),
    rec!("p689-ref23", 689, "p. 689", Textual, "citation"),
    rec!("p763-l5", 763, "p. 763", Textual, "equation reference formatting"),
    rec!("p766-l12", 766, "p. 766", Textual, "comparison direction of an Eb/N0 value"),
    rec!("p768-fig16.1", 768, "p. 768", Textual, "adder output arrows in a figure"),
    rec!("p822-eq16.103a", 822, "p. 822", Textual, "conditioning notation in a denominator"),
    rec!("p830-l3", 830, "p. 830", Textual, "equation cross-reference"),
    rec!("p832-eq16.114b", 832, "p. 832", Textual, "sign of a half-sum of L-values"),
    rec!("p875-setminus", 875, "p. 875", FormulaVerified, "check-to-bit messages exclude the target bit (set minus)", "p875-setminus/exclusion"),
    rec!("p875-eq17.47", 875, "p. 875", FormulaVerified, "check-node update sums over parity-satisfying tuples", "p875-eq17.47/recurrence"),
    rec!("p876-alpha", 876, "p. 876", Textual, "iteration superscript in parentheses"),
    rec!("p947-prob17.22", 947, "p. 947", Textual, "parameter name in a problem"),
    rec!("p948-ref10", 948, "p. 948", Textual, "citation"),
    rec!("p948-ref17", 948, "p. 948", Textual, "citation"),
    rec!("p948-ref19", 948, "p. 948", Textual, "citation"),
    rec!("p1102-ref17", 1102, "p. 1102", Textual, "citation"),
    rec!("p1102-ref18", 1102, "p. 1102", Textual, "citation"),
];

/// Stable, page-sorted view of every record.
pub fn records() -> Vec<&'static ErratumRecord> {
    let mut v: Vec<_> = RECORDS.iter().collect();
    v.sort_by_key(|r| r.page);
    v
}

pub fn record(id: &str) -> Option<&'static ErratumRecord> {
    RECORDS.iter().find(|r| r.id == id)
}

/// Records of one category (given by name), or all of them.
pub fn list_errata(category: Option<&str>) -> Result<Vec<&'static ErratumRecord>, HarnessError> {
    let cat = category.map(Category::from_str).transpose()?;
    Ok(records()
        .into_iter()
        .filter(|r| cat.is_none_or(|c| r.category == c))
        .collect())
}
