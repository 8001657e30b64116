//! Channel-coding primitives with executable correctness oracles.
//!
//! Everything here is pure computation on owned data: polynomial and
//! extension-field arithmetic over GF(2), linear block and BCH codes,
//! feedforward convolutional encoders with their trellises, soft-decision
//! decoders (Viterbi, SOVA, BCJR in probability, log and max-log form),
//! sum-product LDPC decoding, analytic performance bounds and a
//! counter-based Monte-Carlo channel simulator.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and anything that touches threads live in the `fecverify` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bch;
pub mod blockcode;
pub mod bounds;
pub mod conv;
mod error;
pub mod gf2;
pub mod ldpc;
pub(crate) mod math;
pub mod sim;
pub mod soft;

pub use error::{Error, Result};
pub(crate) use error::invalid;
