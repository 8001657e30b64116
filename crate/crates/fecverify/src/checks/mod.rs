//! Executable checks bound to registry records.
//!
//! A check's `run` asserts the corrected form. Where a `twin` is present it
//! runs the same assertions against the uncorrected form, and is expected to
//! fail.

mod algebra;
mod block;
mod bounds;
mod channel;
mod ldpc;
mod oracle;
mod soft;

use crate::probe::Probe;

pub struct Check {
    pub id: &'static str,
    pub run: fn(&mut Probe),
    pub twin: Option<fn(&mut Probe)>,
}

impl Check {
    /// Record id this check belongs to (the part before `/`).
    pub fn record_id(&self) -> &'static str {
        self.id.split_once('/').map_or(self.id, |(r, _)| r)
    }
}

macro_rules! check {
    ($id:literal, $run:path) => {
        Check { id: $id, run: $run, twin: None }
    };
    ($id:literal, $run:path, $twin:path) => {
        Check { id: $id, run: $run, twin: Some($twin) }
    };
}

pub static CHECKS: &[Check] = &[
    check!("p009-eq1.6/metric", channel::squared_metric, channel::unsquared_metric),
    check!("p012-eq1.12/density", channel::awgn_is_density, channel::awgn_as_probability),
    check!("p018-eq1.21/gain", bounds::block_gain, bounds::block_gain_uncorrected),
    check!("p040-division/uniqueness", algebra::division_unique),
    check!("p045-eq2.19c/representation", algebra::element_representation, algebra::element_representation_uncorrected),
    check!("p081-l2/ties", block::ml_at_least_as_close, block::ml_strictly_closer),
    check!("p130-l9/radius", block::product_radius_floor, block::product_radius_rounded),
    check!("p131-d1d2/bound", block::incomplete_product_bound, block::incomplete_product_exact),
    check!("p195-nk-mt/m5-10", algebra::nk_mt_large_m),
    check!("p195-nk-mt/m4", algebra::nk_mt_m4),
    check!("p196-tab6.1/entries", algebra::bch_table),
    check!("p525-eq12.15/series", bounds::series_oracle),
    check!("p526-eq12.16/binomial", bounds::pairwise_binomial, bounds::pairwise_fixed_binomial),
    check!("p532-eq12.38/gain", bounds::conv_gain, bounds::conv_gain_uncorrected),
    check!("p559-eq12.86/partial-metrics", soft::partial_metrics_aligned, soft::partial_metrics_shifted),
    check!("p559-eq12.89/apriori-term", soft::apriori_term, soft::apriori_term_without_constant),
    check!("p561-eq12.99/half-scaling", soft::sova_half_scaling, soft::sova_full_scaling),
    check!("p562-eq12.104/sova-oracle", soft::decoder_oracle_suite, soft::decoder_oracle_suite_zero_init),
    check!("p562-eq12.104/figure-row", soft::figure_row, soft::figure_row_unconditional),
    check!("p567-eq12.123/factorization", soft::apriori_factorization, soft::apriori_factorization_without_a),
    check!("p576-eq12.142/beta", soft::maxlog_beta),
    check!("p576-eq12.143/lvalues", soft::maxlog_lvalues),
    check!("p599-prob12.10/threshold-search", bounds::threshold_search),
    check!("p875-setminus/exclusion", ldpc::set_minus_exclusion, ldpc::no_exclusion),
    check!("p875-eq17.47/recurrence", ldpc::recurrence, ldpc::unfiltered_sum),
];

pub fn find(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}
