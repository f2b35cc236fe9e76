use std::collections::BTreeMap;

use crate::scalar::linalg;
use crate::scalar::{GaussRat, Rat};

use super::types::LinComb;
use super::ValidationIssue;

/// Symmetry type required of a bilinear form on a superspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormSymmetry {
    /// `(a|b) = (−1)^{p(a)p(b)} (b|a)`.
    Supersymmetric,
    /// `(a|b) = −(−1)^{p(a)p(b)} (b|a)`.
    SkewSupersymmetric,
}

/// A finite-dimensional superspace with an even bilinear form and a
/// conjugate-linear involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    pub names: Vec<String>,
    pub parities: Vec<u8>,
    /// `form[i][j] = (a_i | a_j)`.
    pub form: Vec<Vec<GaussRat>>,
    /// φ(a_i) as a combination of basis vectors.
    pub phi: Vec<LinComb>,
}

fn sign(negative: bool) -> GaussRat {
    GaussRat::from_int(if negative { -1 } else { 1 })
}

impl SuperSpace {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn parity_sign(&self, i: usize, j: usize) -> GaussRat {
        sign(self.parities[i] * self.parities[j] == 1)
    }

    /// `(x|y)` for coordinate vectors.
    pub fn pair(&self, x: &LinComb, y: &LinComb) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let f = &self.form[*i][*j];
                if !f.is_zero() {
                    acc = &acc + &(&(a * b) * f);
                }
            }
        }
        acc
    }

    pub fn phi_of(&self, x: &LinComb) -> LinComb {
        x.apply_conj_linear(|i| self.phi[i].clone())
    }

    /// Dual basis `b^j = Σ_l M[l][j] a_l` with `(a_i | b^j) = δ_ij`.
    pub fn dual_basis(&self) -> Option<Vec<LinComb>> {
        let inv = linalg::inverse(&self.form)?;
        Some(
            (0..self.dim())
                .map(|j| LinComb::from_terms((0..self.dim()).map(|l| (l, inv[l][j].clone()))))
                .collect(),
        )
    }

    /// Every violated invariant of an even form with the given symmetry and a
    /// compatible involution.
    pub fn validate(&self, symmetry: FormSymmetry, issues: &mut Vec<ValidationIssue>, ctx: &str) {
        let n = self.dim();
        if self.parities.len() != n || self.phi.len() != n {
            issues.push(ValidationIssue::new(ctx, "basis, parity and φ lists differ in length"));
            return;
        }
        if self.form.len() != n || self.form.iter().any(|r| r.len() != n) {
            issues.push(ValidationIssue::new(ctx, "form matrix is not square of basis size"));
            return;
        }
        for (i, p) in self.parities.iter().enumerate() {
            if *p > 1 {
                issues.push(ValidationIssue::new(ctx, format!("basis element {i} has parity {p}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let f = &self.form[i][j];
                if self.parities[i] != self.parities[j] && !f.is_zero() {
                    issues.push(ValidationIssue::new(
                        ctx,
                        format!("form is not even: ({}|{}) = {f}", self.names[i], self.names[j]),
                    ));
                }
                let s = self.parity_sign(i, j);
                let expected = match symmetry {
                    FormSymmetry::Supersymmetric => &s * &self.form[j][i],
                    FormSymmetry::SkewSupersymmetric => -(&s * &self.form[j][i]),
                };
                if *f != expected {
                    issues.push(ValidationIssue::new(
                        ctx,
                        format!(
                            "form symmetry ({symmetry:?}) fails on ({}, {})",
                            self.names[i], self.names[j]
                        ),
                    ));
                }
            }
        }
        if n > 0 && linalg::determinant(&self.form).is_zero() {
            issues.push(ValidationIssue::new(ctx, "form is degenerate"));
        }
        for (i, img) in self.phi.iter().enumerate() {
            if img.max_index().is_some_and(|m| m >= n) {
                issues.push(ValidationIssue::new(ctx, format!("φ({}) references unknown index", self.names[i])));
                return;
            }
            if img.terms().iter().any(|(j, _)| self.parities[*j] != self.parities[i]) {
                issues.push(ValidationIssue::new(ctx, format!("φ({}) does not preserve parity", self.names[i])));
            }
            if self.phi_of(img) != LinComb::basis(i) {
                issues.push(ValidationIssue::new(ctx, format!("φ² ≠ I on {}", self.names[i])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.pair(&self.phi[i], &self.phi[j]);
                if lhs != self.form[i][j].conj() {
                    issues.push(ValidationIssue::new(
                        ctx,
                        format!("(φx|φy) ≠ conj((x|y)) on ({}, {})", self.names[i], self.names[j]),
                    ));
                }
            }
        }
    }
}

/// A finite-dimensional Lie superalgebra with an invariant form and a
/// conjugate-linear involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieData {
    pub space: SuperSpace,
    /// Nonzero structure constants `[a_i, a_j]`.
    pub bracket: BTreeMap<(usize, usize), LinComb>,
}

impl LieData {
    pub fn abelian(space: SuperSpace) -> Self {
        LieData { space, bracket: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> LinComb {
        self.bracket.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Bilinear extension of the bracket.
    pub fn bracket_of(&self, x: &LinComb, y: &LinComb) -> LinComb {
        let mut acc = LinComb::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let br = self.bracket_basis(*i, *j);
                if !br.is_zero() {
                    acc = acc.add(&br.scale(&(a * b)));
                }
            }
        }
        acc
    }

    /// `Σ_i [b^i, [a_i, x]]` for the dual basis `b^i`.
    pub fn casimir(&self, x: &LinComb) -> Option<LinComb> {
        let dual = self.space.dual_basis()?;
        let mut acc = LinComb::zero();
        for (i, b) in dual.iter().enumerate() {
            let inner = self.bracket_of(&LinComb::basis(i), x);
            acc = acc.add(&self.bracket_of(b, &inner));
        }
        Some(acc)
    }

    /// Half the eigenvalue of the Casimir in the adjoint representation, when
    /// the Casimir acts as a scalar.
    pub fn casimir_dual_coxeter(&self) -> Option<Rat> {
        let mut value: Option<GaussRat> = None;
        for i in 0..self.dim() {
            let img = self.casimir(&LinComb::basis(i))?;
            let c = img.coeff(i);
            if img != LinComb::basis(i).scale(&c) {
                return None;
            }
            match &value {
                None => value = Some(c),
                Some(v) if *v == c => {}
                Some(_) => return None,
            }
        }
        let v = value.unwrap_or_default();
        v.is_real().then(|| &v.re / &Rat::from_int(2))
    }

    pub fn validate(&self, issues: &mut Vec<ValidationIssue>, ctx: &str) {
        self.space.validate(FormSymmetry::Supersymmetric, issues, ctx);
        let n = self.dim();
        let par = &self.space.parities;
        let names = &self.space.names;
        for (&(i, j), v) in &self.bracket {
            if i >= n || j >= n || v.max_index().is_some_and(|m| m >= n) {
                issues.push(ValidationIssue::new(ctx, format!("structure constant ({i}, {j}) out of range")));
                return;
            }
            if v.terms().iter().any(|(l, _)| par[*l] != (par[i] + par[j]) % 2) {
                issues.push(ValidationIssue::new(ctx, format!("[{}, {}] has wrong parity", names[i], names[j])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.bracket_basis(i, j);
                let ji = self.bracket_basis(j, i).scale(&-self.space.parity_sign(i, j));
                if ij != ji {
                    issues.push(ValidationIssue::new(
                        ctx,
                        format!("bracket not super-skew on ({}, {})", names[i], names[j]),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.bracket_basis(i, j);
                for l in 0..n {
                    let a = LinComb::basis(i);
                    let c = LinComb::basis(l);
                    // ([a,b]|c) = (a|[b,c])
                    let lhs = self.space.pair(&ij, &c);
                    let rhs = self.space.pair(&a, &self.bracket_basis(j, l));
                    if lhs != rhs {
                        issues.push(ValidationIssue::new(
                            ctx,
                            format!("form not invariant on ({}, {}, {})", names[i], names[j], names[l]),
                        ));
                    }
                    // [a,[b,c]] = [[a,b],c] + (−1)^{p(a)p(b)} [b,[a,c]]
                    let jl = self.bracket_basis(j, l);
                    let il = self.bracket_basis(i, l);
                    let left = self.bracket_of(&a, &jl);
                    let right = self
                        .bracket_of(&ij, &c)
                        .add(&self.bracket_of(&LinComb::basis(j), &il).scale(&self.space.parity_sign(i, j)));
                    if left != right {
                        issues.push(ValidationIssue::new(
                            ctx,
                            format!("super-Jacobi fails on ({}, {}, {})", names[i], names[j], names[l]),
                        ));
                    }
                }
                // φ([a,b]) = [φa, φb]
                let lhs = self.space.phi_of(&ij);
                let rhs = self.bracket_of(&self.space.phi[i], &self.space.phi[j]);
                if lhs != rhs {
                    issues.push(ValidationIssue::new(
                        ctx,
                        format!("φ is not an automorphism on ({}, {})", names[i], names[j]),
                    ));
                }
            }
        }
    }
}
