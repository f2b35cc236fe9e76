//! PBW bases, mode action by straightening, expectation values and
//! consistency checks.
//!
//! Modes use the weight-homogeneous convention `Y(v, z) = Σ v_n z^{−n−Δ_v}`;
//! the unshifted `v_{(n)} = v_{n−Δ+1}` is available through
//! [`Engine::apply_unshifted`].

mod basis;
mod checks;
mod kernel;
mod residue;
mod state;

use thiserror::Error;

use crate::presentation::{AlgebraPresentation, PresentationError};
use crate::scalar::{HalfInt, ScalarError};

pub use basis::{basis, basis_for};
pub use checks::{CommutatorCheck, CommutatorFailure, PrimaryReport};
pub use kernel::{Engine, FieldComb, FieldId};
pub use residue::{res_wz, res_zw, residue_identity, WPower};
pub use state::{expectation, Mode, Monomial, State};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("mode {mode} of {generator} is outside −Δ + ℤ (Δ = {delta})")]
    ModeCoset { generator: String, mode: HalfInt, delta: HalfInt },
    #[error("a field of weight {weight} has no mode at this index")]
    FieldCoset { weight: HalfInt },
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Central charge `2⟨L_2 L_{−2}|0⟩⟩` of a presentation.
pub fn central_charge(p: &AlgebraPresentation) -> Result<crate::scalar::Scalar, EngineError> {
    Ok(Engine::new(p)?.central_charge())
}

#[cfg(test)]
mod tests;
