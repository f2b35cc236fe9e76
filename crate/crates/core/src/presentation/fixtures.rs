//! Ready-made presentations used throughout the tests, benches and CLI.

use std::collections::BTreeMap;

use crate::scalar::{GaussRat, Rat, Scalar};

use super::builders::{build_affine, build_free_boson, build_free_fermion, build_virasoro, diagonal_phi, tensor};
use super::lie::{LieData, SuperSpace};
use super::minimal_w::{build_minimal_w, MinimalWDatum};
use super::types::{AlgebraPresentation, LinComb};

fn g(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

/// `ℂ^{0|1}` with `(a|a) = 1` and `φ(a) = −a`.
pub fn fermion_space() -> SuperSpace {
    SuperSpace { names: vec!["a".into()], parities: vec![1], form: vec![vec![g(1)]], phi: diagonal_phi(1, -1) }
}

/// `ℂ^{2|0}` with the symplectic form `(a|b) = 1`.
pub fn symplectic_space() -> SuperSpace {
    SuperSpace {
        names: vec!["a".into(), "b".into()],
        parities: vec![0, 0],
        form: vec![vec![g(0), g(1)], vec![g(-1), g(0)]],
        phi: diagonal_phi(2, 1),
    }
}

/// `ℂ^{1|0}` with `(a|a) = 1` and `φ(a) = −a`.
pub fn boson_space() -> SuperSpace {
    SuperSpace { names: vec!["a".into()], parities: vec![0], form: vec![vec![g(1)]], phi: diagonal_phi(1, -1) }
}

/// `ℂ^{0|2}` with the skew form `(a|b) = 1` on the odd part.
pub fn odd_boson_space() -> SuperSpace {
    SuperSpace {
        names: vec!["a".into(), "b".into()],
        parities: vec![1, 1],
        form: vec![vec![g(0), g(1)], vec![g(-1), g(0)]],
        phi: diagonal_phi(2, 1),
    }
}

/// `sl(2)` in the basis `e, h, f` with `(e|f) = 1`, `(h|h) = 2` and the
/// compact involution `φ(e) = −f`, `φ(f) = −e`, `φ(h) = −h`.
pub fn sl2_compact() -> LieData {
    let (e, h, f) = (0, 1, 2);
    let mut bracket = BTreeMap::new();
    let mut put = |i: usize, j: usize, v: LinComb| {
        bracket.insert((j, i), v.scale(&g(-1)));
        bracket.insert((i, j), v);
    };
    put(e, f, LinComb::basis(h));
    put(h, e, LinComb::basis(e).scale(&g(2)));
    put(h, f, LinComb::basis(f).scale(&g(-2)));
    LieData {
        space: SuperSpace {
            names: vec!["e".into(), "h".into(), "f".into()],
            parities: vec![0, 0, 0],
            form: vec![vec![g(0), g(0), g(1)], vec![g(0), g(2), g(0)], vec![g(1), g(0), g(0)]],
            phi: vec![LinComb::basis(f).scale(&g(-1)), LinComb::basis(h).scale(&g(-1)), LinComb::basis(e).scale(&g(-1))],
        },
        bracket,
    }
}

pub fn fermion() -> AlgebraPresentation {
    build_free_fermion(&fermion_space()).expect("fixture")
}

pub fn symplectic_fermion() -> AlgebraPresentation {
    build_free_fermion(&symplectic_space()).expect("fixture")
}

pub fn boson() -> AlgebraPresentation {
    build_free_boson(&boson_space()).expect("fixture")
}

pub fn odd_boson() -> AlgebraPresentation {
    build_free_boson(&odd_boson_space()).expect("fixture")
}

pub fn affine_sl2() -> AlgebraPresentation {
    build_affine(&sl2_compact(), None).expect("fixture")
}

pub fn virasoro_half() -> AlgebraPresentation {
    build_virasoro(Scalar::frac(1, 2))
}

pub fn fermion_boson() -> AlgebraPresentation {
    tensor(&fermion(), &boson()).expect("fixture")
}

/// `W^k(sl(3), θ/2)`: `g^♮ = ℂa` with `a = diag(1, −2, 1)`,
/// `g_{−1/2} = span{E21, E32}`, `p(k) = (k+1)(k+3/2)`.
pub fn bershadsky_polyakov_datum() -> MinimalWDatum {
    let gnat = LieData::abelian(SuperSpace {
        names: vec!["a".into()],
        parities: vec![0],
        form: vec![vec![g(6)]],
        phi: diagonal_phi(1, 1),
    });
    let mut action = BTreeMap::new();
    action.insert((0, 0), LinComb::basis(0).scale(&g(-3)));
    action.insert((0, 1), LinComb::basis(1).scale(&g(3)));
    MinimalWDatum {
        gnat,
        ideal_of: vec![0],
        ideal_h_dual: vec![Rat::zero()],
        ghalf_names: vec!["u1".into(), "u2".into()],
        ghalf_parities: vec![0, 0],
        action,
        pairing: vec![vec![g(0), g(-1)], vec![g(1), g(0)]],
        ghalf_phi: diagonal_phi(2, 1),
        h_dual: Rat::from_int(3),
        sdim: Rat::from_int(8),
        pk: [Rat::one(), Rat::frac(5, 2), Rat::frac(3, 2)],
    }
}

/// `W^k(osp(1|2), θ/2)` (Neveu–Schwarz): `g^♮ = 0`, one odd `u` with
/// `⟨u, u⟩ = 1`, `p(k) = (k+1/2)(k+5/4)`.
pub fn n1_datum() -> MinimalWDatum {
    MinimalWDatum {
        gnat: LieData::abelian(SuperSpace { names: vec![], parities: vec![], form: vec![], phi: vec![] }),
        ideal_of: vec![],
        ideal_h_dual: vec![],
        ghalf_names: vec!["u".into()],
        ghalf_parities: vec![1],
        action: BTreeMap::new(),
        pairing: vec![vec![g(1)]],
        ghalf_phi: diagonal_phi(1, 1),
        h_dual: Rat::frac(3, 2),
        sdim: Rat::from_int(1),
        pk: [Rat::one(), Rat::frac(7, 4), Rat::frac(5, 8)],
    }
}

/// The N=1 shape with `p(k) = (k+3/4)(k+1/2)` substituted, used to exercise
/// the collapsing-level finder on a configured polynomial. Only the weight-3/2
/// Gram block is meaningful for this datum.
pub fn collapsing_demo_datum() -> MinimalWDatum {
    let mut d = n1_datum();
    d.pk = [Rat::one(), Rat::frac(5, 4), Rat::frac(3, 8)];
    d
}

pub fn bershadsky_polyakov() -> AlgebraPresentation {
    let mut p = build_minimal_w(&bershadsky_polyakov_datum()).expect("fixture");
    p.name = "Bershadsky-Polyakov".into();
    p
}

pub fn neveu_schwarz() -> AlgebraPresentation {
    let mut p = build_minimal_w(&n1_datum()).expect("fixture");
    p.name = "Neveu-Schwarz".into();
    p
}

/// Jacobi-consistent builtin presentations with short names.
pub fn builtins() -> Vec<(&'static str, AlgebraPresentation)> {
    vec![
        ("fermion", fermion()),
        ("symplectic_fermion", symplectic_fermion()),
        ("boson", boson()),
        ("odd_boson", odd_boson()),
        ("affine_sl2", affine_sl2()),
        ("virasoro", virasoro_half()),
        ("bershadsky_polyakov", bershadsky_polyakov()),
        ("neveu_schwarz", neveu_schwarz()),
        ("fermion_boson", fermion_boson()),
    ]
}
