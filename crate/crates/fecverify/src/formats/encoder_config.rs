//! Encoder definitions as TOML key-value files:
//!
//! ```toml
//! k = 1
//! n = 2
//! generators = ["7", "5"]
//! ```
//!
//! `generators` holds `k` rows of `n` octal entries, row-major, in the
//! right-justified lowest-degree-first convention of
//! [`ConvEncoder::from_octal`].

use std::path::Path;

use fecverify_core::conv::ConvEncoder;
use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncoderConfig {
    pub k: usize,
    pub n: usize,
    pub generators: Vec<String>,
}

impl EncoderConfig {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_encoder(&self) -> Result<ConvEncoder> {
        let g: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        Ok(ConvEncoder::from_octal(self.k, self.n, &g)?)
    }

    pub fn from_encoder(e: &ConvEncoder) -> Self {
        Self {
            k: e.k_in(),
            n: e.n_out(),
            generators: e.to_octal(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain fields serialize")
    }
}

pub fn load_encoder_config(path: &Path) -> Result<EncoderConfig> {
    EncoderConfig::parse(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let c = EncoderConfig::parse("k = 1\nn = 2\ngenerators = [\"7\", \"5\"]\n").unwrap();
        let e = c.to_encoder().unwrap();
        assert_eq!(e.num_states(), 4);
        assert_eq!(EncoderConfig::from_encoder(&e), c);
        assert_eq!(EncoderConfig::parse(&c.to_toml()).unwrap(), c);
        assert!(EncoderConfig::parse("k = 1\nn = 2\ngenerators = [\"9\", \"5\"]\n").unwrap().to_encoder().is_err());
        assert!(EncoderConfig::parse("k = 1\nn = 2\ngens = []\n").is_err());
    }
}
