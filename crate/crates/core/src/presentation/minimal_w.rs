use std::collections::BTreeMap;

use crate::scalar::linalg;
use crate::scalar::{GaussRat, HalfInt, Poly, Rat, Scalar};

use super::lie::LieData;
use super::types::{
    AlgebraPresentation, ConformalVector, Factor, GeneratorDecl, LambdaBracketTable, LinComb, NOPoly, NOTerm,
};
use super::{validate, PresentationError, ValidationIssue};

/// Input data for a minimal W-algebra `W^k(g, θ/2)`.
///
/// `gnat` is the centraliser `g^♮` with its invariant form, `ghalf` a basis of
/// `g_{−1/2}`, `action[(a, u)] = [a, u]` the `g^♮`-action and
/// `pairing[u][v] = ⟨u, v⟩`. Each basis element of `g^♮` belongs to one simple
/// or abelian ideal whose dual Coxeter number is `ideal_h_dual`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalWDatum {
    pub gnat: LieData,
    pub ideal_of: Vec<usize>,
    pub ideal_h_dual: Vec<Rat>,
    pub ghalf_names: Vec<String>,
    pub ghalf_parities: Vec<u8>,
    pub action: BTreeMap<(usize, usize), LinComb>,
    pub pairing: Vec<Vec<GaussRat>>,
    pub ghalf_phi: Vec<LinComb>,
    pub h_dual: Rat,
    pub sdim: Rat,
    /// Coefficients `[p2, p1, p0]` of `p(k) = p2 k² + p1 k + p0` (monic).
    pub pk: [Rat; 3],
}

fn sign(negative: bool) -> GaussRat {
    GaussRat::from_int(if negative { -1 } else { 1 })
}

impl MinimalWDatum {
    pub fn n_gnat(&self) -> usize {
        self.gnat.dim()
    }

    pub fn n_ghalf(&self) -> usize {
        self.ghalf_names.len()
    }

    pub fn p_of_k(&self) -> Poly {
        Poly::from_rats(&[self.pk[2].clone(), self.pk[1].clone(), self.pk[0].clone()])
    }

    pub fn p_scalar(&self) -> Scalar {
        Scalar::from_poly(self.p_of_k())
    }

    /// The dual basis `a^α = Σ_l M[l][α] a_l`, `(a_α | a^β) = δ`.
    pub fn dual_basis(&self) -> Vec<LinComb> {
        self.gnat.space.dual_basis().unwrap_or_default()
    }

    /// `[x, u]` for `x ∈ g^♮`, `u ∈ g_{−1/2}`.
    pub fn act(&self, x: &LinComb, u: &LinComb) -> LinComb {
        let mut acc = LinComb::zero();
        for (a, c) in x.terms() {
            for (v, d) in u.terms() {
                if let Some(img) = self.action.get(&(*a, *v)) {
                    acc = acc.add(&img.scale(&(c * d)));
                }
            }
        }
        acc
    }

    /// `[u, x] = −(−1)^{p(u)p(x)} [x, u]` for homogeneous basis elements.
    pub fn act_right(&self, u: usize, a: usize) -> LinComb {
        let s = sign(self.ghalf_parities[u] * self.gnat.space.parities[a] == 1);
        self.act(&LinComb::basis(a), &LinComb::basis(u)).scale(&-s)
    }

    pub fn pair(&self, u: &LinComb, v: &LinComb) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (i, a) in u.terms() {
            for (j, b) in v.terms() {
                acc = &acc + &(&(a * b) * &self.pairing[*i][*j]);
            }
        }
        acc
    }

    /// `[[e_θ, u], v]^♮ = Σ_α ⟨u, [v, a^α]⟩ a_α`.
    pub fn natural_projection(&self, u: usize, v: usize) -> LinComb {
        let dual = self.dual_basis();
        let terms = (0..self.n_gnat()).map(|alpha| {
            let mut v_a = LinComb::zero();
            for (l, c) in dual[alpha].terms() {
                v_a = v_a.add(&self.act_right(v, *l).scale(c));
            }
            (alpha, self.pair(&LinComb::basis(u), &v_a))
        });
        LinComb::from_terms(terms)
    }

    /// `⟨[a_α, u], [v, a^β]⟩` for all `α, β`.
    pub fn mixed_pairing(&self, u: usize, v: usize) -> Vec<Vec<GaussRat>> {
        let dual = self.dual_basis();
        let n = self.n_gnat();
        let au: Vec<LinComb> = (0..n).map(|a| self.act(&LinComb::basis(a), &LinComb::basis(u))).collect();
        let va: Vec<LinComb> = (0..n)
            .map(|b| {
                let mut acc = LinComb::zero();
                for (l, c) in dual[b].terms() {
                    acc = acc.add(&self.act_right(v, *l).scale(c));
                }
                acc
            })
            .collect();
        (0..n).map(|a| (0..n).map(|b| self.pair(&au[a], &va[b])).collect()).collect()
    }

    pub fn validate(&self, issues: &mut Vec<ValidationIssue>) {
        let ctx = "minimal-W datum";
        self.gnat.validate(issues, "g^natural");
        let n = self.n_gnat();
        let m = self.n_ghalf();
        let gpar = &self.gnat.space.parities;
        let upar = &self.ghalf_parities;
        if self.ideal_of.len() != n || self.ideal_of.iter().any(|&i| i >= self.ideal_h_dual.len()) {
            issues.push(ValidationIssue::new(ctx, "ideal assignment does not cover g^natural"));
            return;
        }
        if upar.len() != m || self.pairing.len() != m || self.pairing.iter().any(|r| r.len() != m) || self.ghalf_phi.len() != m
        {
            issues.push(ValidationIssue::new(ctx, "g_{-1/2} data have inconsistent sizes"));
            return;
        }
        if !self.pk[0].is_one() {
            issues.push(ValidationIssue::new(ctx, "p(k) must be monic"));
        }
        for i in 0..n {
            for j in 0..n {
                if self.ideal_of[i] != self.ideal_of[j] {
                    if !self.gnat.space.form[i][j].is_zero() {
                        issues.push(ValidationIssue::new(ctx, format!("form couples ideals at ({i}, {j})")));
                    }
                    if !self.gnat.bracket_basis(i, j).is_zero() {
                        issues.push(ValidationIssue::new(ctx, format!("bracket couples ideals at ({i}, {j})")));
                    }
                }
            }
        }
        for (&(a, u), img) in &self.action {
            if a >= n || u >= m || img.max_index().is_some_and(|x| x >= m) {
                issues.push(ValidationIssue::new(ctx, format!("action entry ({a}, {u}) out of range")));
                return;
            }
            if img.terms().iter().any(|(v, _)| upar[*v] != (gpar[a] + upar[u]) % 2) {
                issues.push(ValidationIssue::new(ctx, format!("[a_{a}, u_{u}] has wrong parity")));
            }
        }
        // Representation: [x,[y,u]] − (−1)^{p(x)p(y)} [y,[x,u]] = [[x,y],u].
        for x in 0..n {
            for y in 0..n {
                let xy = self.gnat.bracket_basis(x, y);
                let s = sign(gpar[x] * gpar[y] == 1);
                for u in 0..m {
                    let bx = LinComb::basis(x);
                    let by = LinComb::basis(y);
                    let bu = LinComb::basis(u);
                    let lhs = self
                        .act(&bx, &self.act(&by, &bu))
                        .add(&self.act(&by, &self.act(&bx, &bu)).scale(&-&s));
                    if lhs != self.act(&xy, &bu) {
                        issues.push(ValidationIssue::new(ctx, format!("action is not a representation on ({x}, {y}, {u})")));
                    }
                }
            }
        }
        for u in 0..m {
            for v in 0..m {
                let p = &self.pairing[u][v];
                if upar[u] != upar[v] && !p.is_zero() {
                    issues.push(ValidationIssue::new(ctx, format!("pairing is not even at ({u}, {v})")));
                }
                let expected = -(&sign(upar[u] * upar[v] == 1) * &self.pairing[v][u]);
                if *p != expected {
                    issues.push(ValidationIssue::new(ctx, format!("pairing is not skew-supersymmetric at ({u}, {v})")));
                }
                for a in 0..n {
                    let bu = LinComb::basis(u);
                    let bv = LinComb::basis(v);
                    let ba = LinComb::basis(a);
                    let lhs = &self.pair(&self.act(&ba, &bu), &bv)
                        + &(&sign(gpar[a] * upar[u] == 1) * &self.pair(&bu, &self.act(&ba, &bv)));
                    if !lhs.is_zero() {
                        issues.push(ValidationIssue::new(ctx, format!("pairing is not invariant at ({a}, {u}, {v})")));
                    }
                }
            }
        }
        if m > 0 && linalg::determinant(&self.pairing).is_zero() {
            issues.push(ValidationIssue::new(ctx, "pairing on g_{-1/2} is degenerate"));
        }
        for (u, img) in self.ghalf_phi.iter().enumerate() {
            if img.max_index().is_some_and(|x| x >= m) {
                issues.push(ValidationIssue::new(ctx, format!("φ(u_{u}) out of range")));
                continue;
            }
            if img.terms().iter().any(|(v, _)| upar[*v] != upar[u]) {
                issues.push(ValidationIssue::new(ctx, format!("φ(u_{u}) does not preserve parity")));
            }
            if img.apply_conj_linear(|i| self.ghalf_phi[i].clone()) != LinComb::basis(u) {
                issues.push(ValidationIssue::new(ctx, format!("φ² ≠ I on u_{u}")));
            }
        }
    }

    /// `c(k) = k·sdim/(k+h^∨) − 6k + h^∨ − 4`.
    pub fn central_charge(&self) -> Scalar {
        minimal_w_central_charge(&self.sdim, &self.h_dual)
    }
}

/// `c(k) = k·sdim/(k+h^∨) − 6k + h^∨ − 4` as a function of `k`.
pub fn minimal_w_central_charge(sdim: &Rat, h_dual: &Rat) -> Scalar {
    let k = Scalar::k();
    let h = Scalar::from_rat(h_dual.clone());
    let first = &k.scale_rat(sdim) / &(&k + &h);
    &(&(&first - &k.scale_rat(&Rat::from_int(6))) + &h) - &Scalar::from_int(4)
}

/// Minimal W-algebra presentation: generators `J^a` (weight 1), `G^u`
/// (weight 3/2) and `L` (weight 2), with the λ-brackets of the minimal
/// reduction written in terms of `p(k)`.
pub fn build_minimal_w(d: &MinimalWDatum) -> Result<AlgebraPresentation, PresentationError> {
    let mut issues = Vec::new();
    d.validate(&mut issues);
    if !issues.is_empty() {
        return Err(PresentationError::Invalid(issues));
    }
    let n = d.n_gnat();
    let m = d.n_ghalf();
    let g_off = n;
    let l_id = n + m;
    let k = Scalar::k();
    let gs = &d.gnat.space;
    let dual = d.dual_basis();

    let mut generators = Vec::with_capacity(n + m + 1);
    for i in 0..n {
        generators.push(GeneratorDecl {
            name: format!("J^{}", gs.names[i]),
            delta: HalfInt::from_int(1),
            parity: gs.parities[i],
            phi: gs.phi[i].clone(),
        });
    }
    for u in 0..m {
        generators.push(GeneratorDecl {
            name: format!("G^{}", d.ghalf_names[u]),
            delta: HalfInt::from_twice(3),
            parity: d.ghalf_parities[u],
            phi: LinComb::from_terms(d.ghalf_phi[u].terms().iter().map(|(v, c)| (v + g_off, c.clone()))),
        });
    }
    generators.push(GeneratorDecl {
        name: "L".into(),
        delta: HalfInt::from_int(2),
        parity: 0,
        phi: LinComb::basis(l_id),
    });

    let mut t = LambdaBracketTable::new();
    let c = d.central_charge();

    // [J^a_λ J^b] = J^{[a,b]} + λ (k + (h^∨ − h^∨_{0,i})/2)(a|b)
    for i in 0..n {
        let level = &k + &Scalar::from_rat(&(&d.h_dual - &d.ideal_h_dual[d.ideal_of[i]]) / &Rat::from_int(2));
        for j in 0..n {
            t.set(i, j, 0, NOPoly::from_lincomb(&d.gnat.bracket_basis(i, j), 0, 0));
            t.set(i, j, 1, NOPoly::vacuum(level.scale(&gs.form[i][j])));
        }
    }
    // [J^a_λ G^u] = G^{[a,u]}, [G^u_λ J^a] = −p(a,u) G^{[a,u]}
    for a in 0..n {
        for u in 0..m {
            let img = d.act(&LinComb::basis(a), &LinComb::basis(u));
            t.set(a, g_off + u, 0, NOPoly::from_lincomb(&img, g_off, 0));
            let s = sign(gs.parities[a] * d.ghalf_parities[u] == 1);
            t.set(g_off + u, a, 0, NOPoly::from_lincomb(&img.scale(&-s), g_off, 0));
        }
    }
    // [G^u_λ G^v]
    let two_k1 = (&k + &Scalar::one()).scale_rat(&Rat::from_int(2));
    let pk = d.p_scalar();
    for u in 0..m {
        for v in 0..m {
            let uv = Scalar::from_gauss(d.pairing[u][v].clone());
            let (gu, gv) = (g_off + u, g_off + v);
            let mut e0 = NOPoly::zero();
            let mut e1 = NOPoly::zero();
            // −2(k+h^∨)⟨u,v⟩ L
            e0.push(NOTerm::new(
                &(&k + &Scalar::from_rat(d.h_dual.clone())).scale_rat(&Rat::from_int(-2)) * &uv,
                vec![Factor::gen(l_id)],
            ));
            // ⟨u,v⟩ Σ_α :J^{a^α} J^{a_α}:
            for (alpha, up) in dual.iter().enumerate() {
                for (l, cl) in up.terms() {
                    e0.push(NOTerm::new(uv.scale(cl), vec![Factor::gen(*l), Factor::gen(alpha)]));
                }
            }
            // 2 Σ ⟨[a_α,u],[v,a^β]⟩ :J^{a^α} J^{a_β}:  and  2λ Σ ⟨…⟩ J^{[a^α, a_β]}
            let mixed = d.mixed_pairing(u, v);
            for (alpha, row) in mixed.iter().enumerate() {
                for (beta, x) in row.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let two_x = x.scale(&Rat::from_int(2));
                    for (l, cl) in dual[alpha].terms() {
                        e0.push(NOTerm::new(Scalar::from_gauss(&two_x * cl), vec![Factor::gen(*l), Factor::gen(beta)]));
                    }
                    let br = d.gnat.bracket_of(&dual[alpha], &LinComb::basis(beta));
                    e1 = e1.add(&NOPoly::from_lincomb(&br.scale(&two_x), 0, 0));
                }
            }
            // 2(k+1)(T + 2λ) J^w
            let w = d.natural_projection(u, v);
            e0 = e0.add(&NOPoly::from_lincomb(&w, 0, 1).scale(&two_k1));
            e1 = e1.add(&NOPoly::from_lincomb(&w, 0, 0).scale(&two_k1.scale_rat(&Rat::from_int(2))));
            t.set(gu, gv, 0, e0);
            t.set(gu, gv, 1, e1);
            // λ² coefficient 2p(k)⟨u,v⟩ ⇒ G^u_{(2)}G^v = 4p(k)⟨u,v⟩
            t.set(gu, gv, 2, NOPoly::vacuum((&pk * &uv).scale_rat(&Rat::from_int(4))));
        }
    }
    // L brackets: J^a, G^u primary; L Virasoro.
    for x in 0..l_id {
        let delta = generators[x].delta.to_rat();
        t.set(l_id, x, 0, NOPoly::term(Scalar::one(), vec![Factor::new(1, x)]));
        t.set(l_id, x, 1, NOPoly::term(Scalar::from_rat(delta.clone()), vec![Factor::gen(x)]));
        t.set(x, l_id, 0, NOPoly::term(Scalar::from_rat(&delta - &Rat::one()), vec![Factor::new(1, x)]));
        t.set(x, l_id, 1, NOPoly::term(Scalar::from_rat(delta), vec![Factor::gen(x)]));
    }
    t.set(l_id, l_id, 0, NOPoly::term(Scalar::one(), vec![Factor::new(1, l_id)]));
    t.set(l_id, l_id, 1, NOPoly::term(Scalar::from_int(2), vec![Factor::gen(l_id)]));
    t.set(l_id, l_id, 3, NOPoly::vacuum(c.scale_rat(&Rat::frac(1, 2))));

    let p = AlgebraPresentation {
        name: "minimal W".into(),
        generators,
        brackets: t,
        conformal: ConformalVector::Generator(l_id),
        central_charge: Some(c),
        minimal_w: Some(Box::new(d.clone())),
    };
    let issues = validate(&p);
    if issues.is_empty() {
        Ok(p)
    } else {
        Err(PresentationError::Invalid(issues))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures;

    #[test]
    fn bp_projection_and_quadratic_part() {
        let d = fixtures::bershadsky_polyakov_datum();
        // w(u1, u2) = a/2
        assert_eq!(d.natural_projection(0, 1), LinComb::basis(0).scale(&GaussRat::real(Rat::frac(1, 2))));
        let p = build_minimal_w(&d).unwrap();
        let e0 = p.brackets.get(1, 2, 0).unwrap();
        let jj = e0.terms.iter().find(|t| t.factors == vec![Factor::gen(0), Factor::gen(0)]).unwrap();
        assert_eq!(jj.coeff, Scalar::frac(-2, 3));
    }

    #[test]
    fn g_g_second_product_is_four_p() {
        for d in [fixtures::bershadsky_polyakov_datum(), fixtures::n1_datum()] {
            let p = build_minimal_w(&d).unwrap();
            let n = d.n_gnat();
            for u in 0..d.n_ghalf() {
                for v in 0..d.n_ghalf() {
                    let expected = (&d.p_scalar() * &Scalar::from_gauss(d.pairing[u][v].clone())).scale_rat(&Rat::from_int(4));
                    let got = p.brackets.get(n + u, n + v, 2).map(|e| e.terms[0].coeff.clone()).unwrap_or_default();
                    assert_eq!(got, expected);
                }
            }
        }
    }

    #[test]
    fn central_charge_formula() {
        let d = fixtures::bershadsky_polyakov_datum();
        assert_eq!(d.central_charge(), "-(2*k+3)*(3*k+1)/(k+3)".parse::<Scalar>().unwrap());
    }

    #[test]
    fn non_invariant_pairing_is_rejected() {
        let mut d = fixtures::bershadsky_polyakov_datum();
        d.pairing[0][1] = GaussRat::from_int(-2);
        assert!(build_minimal_w(&d).is_err());
    }
}
