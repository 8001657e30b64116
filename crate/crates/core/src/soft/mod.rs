//! Soft-decision decoding over [`Trellis`](crate::conv::Trellis) objects.

mod bcjr;
mod channel;
mod lvalue;
mod viterbi;

pub use bcjr::{bcjr, SoftOutput};
pub use channel::{bpsk_symbol, branch_metric, Observation};
pub use lvalue::{
    apriori_llr, bipolar, combine, max_log_l_value, max_of, max_star, AprioriFactor, LlrSequence,
    MapMode,
};
pub use viterbi::{
    partial_metrics, reliability_update, sova, sova_with_rule, viterbi, viterbi_path,
    ReliabilityRule, SovaOutput, ViterbiPath,
};
