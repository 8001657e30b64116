//! Arithmetic over GF(2)\[X\] and the extension fields GF(2^m).

mod field;
mod poly;

pub use field::{Element, ExtensionField, MAX_DEGREE};
pub use poly::BinaryPolynomial;
