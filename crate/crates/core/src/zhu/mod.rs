//! The Zhu algebra of a minimal W-algebra, given by generators and relations,
//! with its anti-involution `ω`; and the star product on vertex-algebra states.
//!
//! Generators are ordered `u_1, …, u_t` (a basis of `g_{−1/2}`), then
//! `a_1, …, a_r` (a basis of `g^♮`), then the central element. Elements are
//! kept in PBW normal form and written one term per line as
//! `coeff · u1*a*L'^2`.

mod algebra;
mod star;

use thiserror::Error;

use crate::engine::EngineError;
use crate::presentation::ValidationIssue;

pub use algebra::{
    k_independence_check, zhu_multiply, zhu_omega, zhu_suite, CentralGenerator, JacobiFailure, KIndependenceReport,
    ZhuElement, ZhuPresentation, ZhuSuiteReport, ZhuWord,
};
pub use star::{zhu_star, zhu_star_with};

#[derive(Debug, Error)]
pub enum ZhuError {
    #[error("{0} is not a minimal W-algebra presentation")]
    NotMinimalW(String),
    #[error("invalid minimal-W datum: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ValidationIssue>),
    #[error("the left factor of a star product must be homogeneous")]
    NonHomogeneous,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[cfg(test)]
mod tests;
