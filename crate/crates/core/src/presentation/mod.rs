//! Input data model: generators, λ-bracket tables and builders for the
//! standard families (free fermions, free bosons, affine, Virasoro, minimal
//! W-algebras and tensor products).

mod builders;
pub mod config;
pub mod fixtures;
mod lie;
mod minimal_w;
mod types;

use std::fmt;

use thiserror::Error;

use crate::scalar::ScalarError;

pub use builders::{build_affine, build_free_boson, build_free_fermion, build_virasoro, diagonal_phi, tensor, trivial};
pub use lie::{FormSymmetry, LieData, SuperSpace};
pub use minimal_w::{build_minimal_w, minimal_w_central_charge, MinimalWDatum};
pub use types::{
    AlgebraPresentation, ConformalVector, Factor, GenId, GeneratorDecl, LambdaBracketTable, LinComb, NOPoly, NOTerm,
};

/// One violated invariant, with the place it was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationIssue {
    pub location: String,
    pub message: String,
}

impl ValidationIssue {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        ValidationIssue { location: location.into(), message: message.into() }
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PresentationError {
    #[error("invalid presentation: {}", join_issues(.0))]
    Invalid(Vec<ValidationIssue>),
    #[error("configuration error at {field}: {message}")]
    Config { field: String, message: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn join_issues(issues: &[ValidationIssue]) -> String {
    issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Every structural invariant of `p` that fails; an empty list means valid.
///
/// Quasiprimarity of the generators depends on the mode algebra and is
/// checked by the engine.
pub fn validate(p: &AlgebraPresentation) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    let gens = &p.generators;
    let n = gens.len();
    for (i, g) in gens.iter().enumerate() {
        let loc = format!("generator {i} ({})", g.name);
        if g.delta.twice() <= 0 {
            issues.push(ValidationIssue::new(&loc, format!("conformal weight {} is not positive", g.delta)));
        }
        if g.parity > 1 {
            issues.push(ValidationIssue::new(&loc, format!("parity {} is not 0 or 1", g.parity)));
        }
        if gens[..i].iter().any(|h| h.name == g.name) {
            issues.push(ValidationIssue::new(&loc, "duplicate generator name"));
        }
        if g.phi.max_index().is_some_and(|m| m >= n) {
            issues.push(ValidationIssue::new(&loc, "φ image references an unknown generator"));
            continue;
        }
        for (j, _) in g.phi.terms() {
            if gens[*j].delta != g.delta || gens[*j].parity != g.parity {
                issues.push(ValidationIssue::new(&loc, format!("φ image mixes in {} of different weight or parity", gens[*j].name)));
            }
        }
    }
    if issues.iter().any(|i| i.message.contains("unknown generator")) {
        return issues;
    }
    for (i, g) in gens.iter().enumerate() {
        let twice = g.phi.apply_conj_linear(|j| gens[j].phi.clone());
        if twice != LinComb::basis(i) {
            issues.push(ValidationIssue::new(format!("generator {i} ({})", g.name), "φ² ≠ I"));
        }
    }
    let check_poly = |poly: &NOPoly, loc: &str, want_w2: i64, want_par: u8, issues: &mut Vec<ValidationIssue>| {
        for term in &poly.terms {
            if let Some(f) = term.factors.iter().find(|f| f.gen >= n) {
                issues.push(ValidationIssue::new(loc, format!("unknown generator index {}", f.gen)));
                return;
            }
            let w2 = term.weight2(gens);
            if w2 != want_w2 {
                issues.push(ValidationIssue::new(
                    loc,
                    format!("term of weight {} where {} is required", w2 as f64 / 2.0, want_w2 as f64 / 2.0),
                ));
            }
            if term.parity(gens) != want_par {
                issues.push(ValidationIssue::new(loc, "term of wrong parity"));
            }
        }
    };
    for (&(i, j, t), poly) in p.brackets.iter() {
        let loc = format!("bracket entry ({i}, {j}, {t})");
        if i >= n || j >= n {
            issues.push(ValidationIssue::new(&loc, "unknown generator index"));
            continue;
        }
        let want = gens[i].delta.twice() + gens[j].delta.twice() - 2 * t as i64 - 2;
        if want < 0 {
            issues.push(ValidationIssue::new(&loc, "entry of negative prescribed weight is present"));
            continue;
        }
        check_poly(poly, &loc, want, (gens[i].parity + gens[j].parity) % 2, &mut issues);
    }
    match &p.conformal {
        ConformalVector::Generator(g) => {
            if *g >= n {
                issues.push(ValidationIssue::new("conformal vector", "unknown generator index"));
            } else if gens[*g].delta.twice() != 4 || gens[*g].parity != 0 {
                issues.push(ValidationIssue::new("conformal vector", "generator is not even of weight 2"));
            }
        }
        ConformalVector::Composite(poly) => {
            if n > 0 && poly.is_zero() {
                issues.push(ValidationIssue::new("conformal vector", "composite conformal vector is zero"));
            }
            check_poly(poly, "conformal vector", 4, 0, &mut issues);
        }
    }
    issues
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn builtins_validate() {
        for (name, p) in fixtures::builtins() {
            assert!(validate(&p).is_empty(), "{name}: {:?}", validate(&p));
        }
    }

    #[test]
    fn inhomogeneous_entry_is_named() {
        let mut p = fixtures::virasoro_half();
        p.brackets.set(0, 0, 1, NOPoly::vacuum(Scalar::one()));
        let issues = validate(&p);
        assert_eq!(issues.len(), 1);
        assert!(issues[0].location.contains("(0, 0, 1)"));
    }

    #[test]
    fn phi_squared_violation_is_reported() {
        let mut p = fixtures::affine_sl2();
        // φ(e) = −2f, φ(f) = −e gives φ²(e) = 2e.
        p.generators[0].phi = LinComb::basis(2).scale(&crate::GaussRat::from_int(-2));
        assert!(validate(&p).iter().any(|i| i.message.contains("φ²")));
    }

    #[test]
    fn negative_weight_entry_is_reported() {
        let mut p = fixtures::fermion();
        p.brackets.set(0, 0, 1, NOPoly::vacuum(Scalar::one()));
        assert!(validate(&p).iter().any(|i| i.message.contains("negative")));
    }
}
