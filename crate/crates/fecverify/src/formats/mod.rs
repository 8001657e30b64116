//! On-disk formats: sparse H matrices, encoder configs and BER curves.

mod ber_csv;
mod encoder_config;
mod hmatrix;

pub use ber_csv::{read_ber_csv, write_ber_csv, CsvRow};
pub use encoder_config::{EncoderConfig, load_encoder_config};
pub use hmatrix::{format_h_matrix, load_h_matrix, parse_h_matrix};
