//! Continued fractions, zero continued fractions, lens space fillings and
//! plumbing invariants.

pub mod budding;
pub mod cfrac;
pub mod error;
pub mod lisca;
pub mod palf;
pub mod plumbing;
pub mod properties;
pub mod rational;
pub mod zerostrings;

pub use cfrac::CfString;
pub use error::{Error, Result};
pub use rational::Rational;

/// Serializes big integers and similar values as decimal strings.
pub(crate) fn as_decimal<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}
