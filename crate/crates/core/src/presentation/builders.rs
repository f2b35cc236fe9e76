use crate::scalar::{GaussRat, HalfInt, Rat, Scalar};

use super::lie::{FormSymmetry, LieData, SuperSpace};
use super::types::{
    AlgebraPresentation, ConformalVector, Factor, GeneratorDecl, LambdaBracketTable, LinComb, NOPoly, NOTerm,
};
use super::{validate, PresentationError, ValidationIssue};

fn check(issues: Vec<ValidationIssue>) -> Result<(), PresentationError> {
    if issues.is_empty() {
        Ok(())
    } else {
        Err(PresentationError::Invalid(issues))
    }
}

fn generators_from_space(space: &SuperSpace, delta: HalfInt) -> Vec<GeneratorDecl> {
    (0..space.dim())
        .map(|i| GeneratorDecl {
            name: space.names[i].clone(),
            delta,
            parity: space.parities[i],
            phi: space.phi[i].clone(),
        })
        .collect()
}

/// `Σ_i :(T^deriv b^i) a_i:` with `b^i` the dual basis, scaled by `coeff`.
fn dual_quadratic(space: &SuperSpace, deriv: u32, coeff: &Scalar) -> NOPoly {
    let dual = space.dual_basis().expect("validated non-degenerate form");
    let mut p = NOPoly::zero();
    for (i, b) in dual.iter().enumerate() {
        for (l, c) in b.terms() {
            p.push(NOTerm::new(
                &Scalar::from_gauss(c.clone()) * coeff,
                vec![Factor::new(deriv, *l), Factor::gen(i)],
            ));
        }
    }
    p
}

fn finish(p: AlgebraPresentation) -> Result<AlgebraPresentation, PresentationError> {
    check(validate(&p))?;
    Ok(p)
}

/// Free (super)fermions: weight-½ generators with `[a_λ b] = (a|b)` for a
/// skew-supersymmetric form.
pub fn build_free_fermion(space: &SuperSpace) -> Result<AlgebraPresentation, PresentationError> {
    let mut issues = Vec::new();
    space.validate(FormSymmetry::SkewSupersymmetric, &mut issues, "fermion space");
    if space.dim() == 0 {
        issues.push(ValidationIssue::new("fermion space", "space is zero-dimensional"));
    }
    check(issues)?;
    let n = space.dim();
    let mut brackets = LambdaBracketTable::new();
    for i in 0..n {
        for j in 0..n {
            brackets.set(i, j, 0, NOPoly::vacuum(Scalar::from_gauss(space.form[i][j].clone())));
        }
    }
    let sdim: i64 = space.parities.iter().map(|&p| if p == 0 { 1 } else { -1 }).sum();
    finish(AlgebraPresentation {
        name: "free fermions".into(),
        generators: generators_from_space(space, HalfInt::from_twice(1)),
        brackets,
        conformal: ConformalVector::Composite(dual_quadratic(space, 1, &Scalar::frac(1, 2))),
        central_charge: Some(Scalar::frac(-sdim, 2)),
        minimal_w: None,
    })
}

/// Free (super)bosons: weight-1 generators with `[a_λ b] = λ(a|b)` for a
/// supersymmetric form.
pub fn build_free_boson(space: &SuperSpace) -> Result<AlgebraPresentation, PresentationError> {
    let mut issues = Vec::new();
    space.validate(FormSymmetry::Supersymmetric, &mut issues, "boson space");
    if space.dim() == 0 {
        issues.push(ValidationIssue::new("boson space", "space is zero-dimensional"));
    }
    check(issues)?;
    let n = space.dim();
    let mut brackets = LambdaBracketTable::new();
    for i in 0..n {
        for j in 0..n {
            brackets.set(i, j, 1, NOPoly::vacuum(Scalar::from_gauss(space.form[i][j].clone())));
        }
    }
    let sdim: i64 = space.parities.iter().map(|&p| if p == 0 { 1 } else { -1 }).sum();
    finish(AlgebraPresentation {
        name: "free bosons".into(),
        generators: generators_from_space(space, HalfInt::from_int(1)),
        brackets,
        conformal: ConformalVector::Composite(dual_quadratic(space, 0, &Scalar::frac(1, 2))),
        central_charge: Some(Scalar::from_int(sdim)),
        minimal_w: None,
    })
}

/// Universal affine vertex algebra at symbolic level `k` with its Sugawara
/// vector. `h_dual` is checked against (or, if absent, computed from) the
/// Casimir eigenvalue on the adjoint representation.
pub fn build_affine(g: &LieData, h_dual: Option<Rat>) -> Result<AlgebraPresentation, PresentationError> {
    let mut issues = Vec::new();
    g.validate(&mut issues, "affine g");
    check(issues)?;
    let casimir = g.casimir_dual_coxeter();
    let h = match (h_dual, casimir) {
        (Some(h), Some(c)) if h != c => {
            return Err(PresentationError::Invalid(vec![ValidationIssue::new(
                "affine g",
                format!("declared dual Coxeter number {h} differs from Casimir value {c}"),
            )]))
        }
        (Some(h), _) => h,
        (None, Some(c)) => c,
        (None, None) => {
            return Err(PresentationError::Invalid(vec![ValidationIssue::new(
                "affine g",
                "Casimir does not act as a scalar; supply the dual Coxeter number",
            )]))
        }
    };
    let n = g.dim();
    let k = Scalar::k();
    let mut brackets = LambdaBracketTable::new();
    for i in 0..n {
        for j in 0..n {
            brackets.set(i, j, 0, NOPoly::from_lincomb(&g.bracket_basis(i, j), 0, 0));
            let f = &g.space.form[i][j];
            brackets.set(i, j, 1, NOPoly::vacuum(k.scale(f)));
        }
    }
    let k_plus_h = &k + &Scalar::from_rat(h.clone());
    let sugawara = Scalar::one().checked_div(&k_plus_h.scale_rat(&Rat::from_int(2)))?;
    let sdim: i64 = g.space.parities.iter().map(|&p| if p == 0 { 1 } else { -1 }).sum();
    let c = k.scale_rat(&Rat::from_int(sdim)).checked_div(&k_plus_h)?;
    finish(AlgebraPresentation {
        name: "affine".into(),
        generators: generators_from_space(&g.space, HalfInt::from_int(1)),
        brackets,
        conformal: ConformalVector::Composite(dual_quadratic(&g.space, 0, &sugawara)),
        central_charge: Some(c),
        minimal_w: None,
    })
}

/// Universal Virasoro vertex algebra of central charge `c`.
pub fn build_virasoro(c: Scalar) -> AlgebraPresentation {
    let mut brackets = LambdaBracketTable::new();
    brackets.set(0, 0, 0, NOPoly::term(Scalar::one(), vec![Factor::new(1, 0)]));
    brackets.set(0, 0, 1, NOPoly::term(Scalar::from_int(2), vec![Factor::gen(0)]));
    brackets.set(0, 0, 3, NOPoly::vacuum(c.scale_rat(&Rat::frac(1, 2))));
    AlgebraPresentation {
        name: "Virasoro".into(),
        generators: vec![GeneratorDecl {
            name: "L".into(),
            delta: HalfInt::from_int(2),
            parity: 0,
            phi: LinComb::basis(0),
        }],
        brackets,
        conformal: ConformalVector::Generator(0),
        central_charge: Some(c),
        minimal_w: None,
    }
}

/// The zero-generator presentation (the trivial vertex algebra ℂ).
pub fn trivial() -> AlgebraPresentation {
    AlgebraPresentation {
        name: "trivial".into(),
        generators: Vec::new(),
        brackets: LambdaBracketTable::new(),
        conformal: ConformalVector::Composite(NOPoly::zero()),
        central_charge: Some(Scalar::zero()),
        minimal_w: None,
    }
}

fn unique_name(base: &str, taken: &[GeneratorDecl]) -> String {
    if !taken.iter().any(|g| g.name == base) {
        return base.to_string();
    }
    (2..)
        .map(|n| format!("{base}.{n}"))
        .find(|cand| !taken.iter().any(|g| &g.name == cand))
        .expect("unbounded search")
}

/// Tensor product: disjoint union of generators, no cross brackets and the
/// sum of the conformal vectors. Colliding names on the right get a `.N`
/// suffix.
pub fn tensor(p: &AlgebraPresentation, q: &AlgebraPresentation) -> Result<AlgebraPresentation, PresentationError> {
    check(validate(p))?;
    check(validate(q))?;
    let off = p.generators.len();
    let mut generators = p.generators.clone();
    for g in &q.generators {
        let name = unique_name(&g.name, &generators);
        generators.push(GeneratorDecl {
            name,
            delta: g.delta,
            parity: g.parity,
            phi: LinComb::from_terms(g.phi.terms().iter().map(|(i, c)| (i + off, c.clone()))),
        });
    }
    let mut brackets = p.brackets.clone();
    for (&(i, j, t), e) in q.brackets.iter() {
        brackets.set(i + off, j + off, t, e.shift_generators(off));
    }
    let conformal = ConformalVector::Composite(p.conformal.as_nopoly().add(&q.conformal.as_nopoly().shift_generators(off)));
    let central_charge = match (&p.central_charge, &q.central_charge) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    finish(AlgebraPresentation {
        name: format!("({}) ⊗ ({})", p.name, q.name),
        generators,
        brackets,
        conformal,
        central_charge,
        minimal_w: None,
    })
}

/// Real basis vectors scaled by `c`, as a diagonal involution.
pub fn diagonal_phi(n: usize, c: i64) -> Vec<LinComb> {
    (0..n).map(|i| LinComb::basis(i).scale(&GaussRat::from_int(c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures;

    #[test]
    fn fermion_table() {
        let p = fixtures::fermion();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.generators[0].parity, 1);
        assert_eq!(p.brackets.get(0, 0, 0), Some(&NOPoly::vacuum(Scalar::one())));
        assert_eq!(p.brackets.len(), 1);
    }

    #[test]
    fn symplectic_fermion_table() {
        let p = fixtures::symplectic_fermion();
        assert_eq!(p.generators.iter().map(|g| g.parity).collect::<Vec<_>>(), vec![0, 0]);
        assert_eq!(p.brackets.get(0, 1, 0), Some(&NOPoly::vacuum(Scalar::one())));
        assert_eq!(p.brackets.get(1, 0, 0), Some(&NOPoly::vacuum(Scalar::from_int(-1))));
    }

    #[test]
    fn zero_dimensional_fermion_space_is_rejected() {
        let space = SuperSpace { names: vec![], parities: vec![], form: vec![], phi: vec![] };
        assert!(matches!(build_free_fermion(&space), Err(PresentationError::Invalid(_))));
    }

    #[test]
    fn boson_tables() {
        let p = fixtures::boson();
        assert_eq!(p.brackets.get(0, 0, 1), Some(&NOPoly::vacuum(Scalar::one())));
        let odd = fixtures::odd_boson();
        assert!(validate(&odd).is_empty());
        let degenerate = SuperSpace {
            names: vec!["a".into()],
            parities: vec![0],
            form: vec![vec![GaussRat::zero()]],
            phi: diagonal_phi(1, -1),
        };
        assert!(build_free_boson(&degenerate).is_err());
    }

    #[test]
    fn affine_sl2_table() {
        let p = fixtures::affine_sl2();
        let (e, f) = (p.generator_index("e").unwrap(), p.generator_index("f").unwrap());
        assert_eq!(p.brackets.get(e, f, 1), Some(&NOPoly::vacuum(Scalar::k())));
        assert_eq!(p.brackets.get(e, f, 0), Some(&NOPoly::generator(p.generator_index("h").unwrap())));
    }

    #[test]
    fn affine_dual_coxeter_mismatch() {
        let g = fixtures::sl2_compact();
        assert!(build_affine(&g, Some(Rat::from_int(3))).is_err());
        assert!(build_affine(&g, Some(Rat::from_int(2))).is_ok());
    }

    #[test]
    fn abelian_affine_matches_boson_brackets() {
        let space = fixtures::boson_space();
        let affine = build_affine(&LieData::abelian(space.clone()), None).unwrap();
        let at_one = affine.at_level(&Rat::one()).unwrap();
        let boson = build_free_boson(&space).unwrap();
        assert_eq!(at_one.brackets, boson.brackets);
    }

    #[test]
    fn virasoro_entries() {
        let p = build_virasoro(Scalar::frac(1, 2));
        assert_eq!(p.brackets.get(0, 0, 3), Some(&NOPoly::vacuum(Scalar::frac(1, 4))));
        let p0 = build_virasoro(Scalar::zero());
        assert!(p0.brackets.get(0, 0, 3).is_none());
        assert!(validate(&p0).is_empty());
    }

    #[test]
    fn tensor_renames_and_has_no_cross_brackets() {
        let f = fixtures::fermion();
        let ff = tensor(&f, &f).unwrap();
        assert_eq!(ff.generators[1].name, "a.2");
        assert!(ff.brackets.get(0, 1, 0).is_none());
        let with_trivial = tensor(&f, &trivial()).unwrap();
        assert_eq!(with_trivial.generators, f.generators);
        assert_eq!(with_trivial.brackets, f.brackets);
    }

    #[test]
    fn tensor_is_associative_up_to_renaming() {
        let (a, b, c) = (fixtures::fermion(), fixtures::boson(), fixtures::virasoro_half());
        let left = tensor(&tensor(&a, &b).unwrap(), &c).unwrap();
        let right = tensor(&a, &tensor(&b, &c).unwrap()).unwrap();
        assert_eq!(left.generators, right.generators);
        assert_eq!(left.brackets, right.brackets);
        assert_eq!(left.central_charge, right.central_charge);
    }
}
