//! The operators `g`, `A(z)` and `ω`, the invariant Hermitian form, Gram
//! matrices, signatures, unitarity verdicts and collapsing-level search.
//!
//! The form is conjugate-linear in its first argument and normalised by
//! `(|0⟩, |0⟩) = 1`. It is computed by peeling creation modes off the left
//! vector: `(X_{−j} R, v) = (R, g(X)_j v)`, with `g(X) = (−i)^{2Δ+p} φ(X)`.

mod export;
mod form;
mod reports;
mod signature;

use thiserror::Error;

use crate::engine::EngineError;
use crate::presentation::PresentationError;
use crate::scalar::{Rat, ScalarError};

pub use export::GramRecord;
pub use form::{GramMatrix, Hermitian, InvarianceCheck, Laurent, Reality, RealityReport};
pub use reports::{
    collapsing_candidates, form_at_level, kernel_flow, unitarity_report, CandidateEvidence, CollapsingCandidate,
    CollapsingReport, KernelFlowReport, KernelViolation, UnitarityReport, Verdict, WeightSignature,
};
pub use signature::{hermitian_inertia, signature, signature_of, SignatureRecord, SignatureReport};

#[derive(Debug, Error)]
pub enum HermitianError {
    #[error("generator {generator} is not quasiprimary; the form requires quasiprimary generators")]
    NotQuasiprimary { generator: String },
    #[error("Gram entry ({row}, {col}) = {entry} has a pole at k = {level}")]
    Pole { row: usize, col: usize, level: Rat, entry: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed record: {0}")]
    Format(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
