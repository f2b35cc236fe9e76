//! Exact invariant Hermitian forms on freely generated conformal vertex
//! superalgebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] — exact arithmetic in ℚ(i)(k);
//! * [`presentation`] — generators and λ-bracket tables, with builders for
//!   free fermions, free bosons, affine, Virasoro and minimal W-algebras;
//! * [`engine`] — PBW bases and mode action by straightening;
//! * [`hermitian`] — the operators `g`, `A(z)`, `ω` and the invariant form,
//!   Gram matrices, signatures and collapsing-level search;
//! * [`zhu`] — the minimal-W Zhu algebra and the star product on states.

pub mod engine;
pub mod hermitian;
pub mod presentation;
pub mod scalar;
pub mod zhu;

pub use scalar::{GaussRat, HalfInt, Phase, Poly, Rat, Scalar, ScalarError};
