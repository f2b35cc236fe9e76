//! Exact arithmetic: ℚ, ℚ(i), rational functions of the level `k` over ℚ(i),
//! and the group of fourth roots of unity.

mod function;
mod gauss;
pub mod linalg;
mod parse;
mod phase;
mod poly;
mod rat;

pub use function::Scalar;
pub use gauss::GaussRat;
pub use phase::{phase_of, phase_of_twice, HalfInt, Phase};
pub use poly::Poly;
pub use rat::Rat;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pole at k = {at}: denominator factor ({factor}) vanishes")]
    Pole { at: Rat, factor: String },
    #[error("degenerate input: the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("integer coefficients too large for root search")]
    CoefficientsTooLarge,
    #[error("invalid conformal weight {0}: expected a non-negative half-integer")]
    InvalidWeight(String),
    #[error("invalid parity {0}: expected 0 or 1")]
    InvalidParity(u8),
}

/// Evaluate `s` at `k0`.
pub fn specialize(s: &Scalar, k0: &Rat) -> Result<GaussRat, ScalarError> {
    s.specialize(k0)
}

/// The rational roots of `p`, sorted ascending.
pub fn rational_roots(p: &Poly) -> Result<Vec<Rat>, ScalarError> {
    p.rational_roots()
}
