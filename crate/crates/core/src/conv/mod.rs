//! Feedforward convolutional encoders, their trellises and distance properties.

mod distance;
mod encoder;
mod trellis;

pub use distance::{
    detour_enumeration, free_distance, transfer_matrix, transfer_series, weight_series,
    WeightSeries, WeightSpectrum,
};
pub use encoder::{ConvEncoder, MAX_TOTAL_MEMORY};
pub use trellis::{Branch, Section, Trellis};
