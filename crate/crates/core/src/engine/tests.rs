use proptest::prelude::*;

use super::*;
use crate::presentation::{fixtures, tensor, LinComb, NOPoly};
use crate::scalar::{GaussRat, Rat, Scalar};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn mono(p: &AlgebraPresentation, modes: &[(i64, usize)]) -> Monomial {
    Monomial::from_modes(modes.iter().map(|&(j2, gen)| Mode { j2, gen }).collect(), &p.generators).unwrap()
}

#[test]
fn fermion_annihilator_pairs_with_form() {
    let p = fixtures::fermion();
    let e = Engine::new(&p).unwrap();
    let s = e.apply_word(&[(0, h(1)), (0, h(-1))]).unwrap();
    assert_eq!(s, State::vacuum());
}

#[test]
fn positive_modes_kill_vacuum() {
    for (name, p) in fixtures::builtins() {
        let e = Engine::new(&p).unwrap();
        for (x, g) in p.generators.iter().enumerate() {
            let d2 = g.delta.twice();
            for n2 in (-d2 + 2..=6).step_by(2) {
                assert!(e.apply_mode(x, h(n2), &State::vacuum()).unwrap().is_zero(), "{name} {}", g.name);
            }
        }
    }
}

#[test]
fn wrong_coset_is_an_error() {
    let p = fixtures::fermion();
    let e = Engine::new(&p).unwrap();
    let err = e.apply_mode(0, h(2), &State::vacuum()).unwrap_err();
    assert!(matches!(err, EngineError::ModeCoset { .. }), "{err}");
}

#[test]
fn affine_sl2_f1_e_minus1() {
    // [f_1, e_{−1}] = [f,e]_0 + (f|e) k = −h_0 + k
    let p = fixtures::affine_sl2();
    let e = Engine::new(&p).unwrap();
    let s = e.apply_word(&[(2, h(2)), (0, h(-2))]).unwrap();
    assert_eq!(s, State::term(Monomial::vacuum(), Scalar::k()));
}

#[test]
fn odd_square_vanishes() {
    let p = fixtures::fermion();
    let e = Engine::new(&p).unwrap();
    assert!(e.apply_word(&[(0, h(-1)), (0, h(-1))]).unwrap().is_zero());
    // a_{−1/2} a_{−3/2} reorders with a sign.
    let s = e.apply_word(&[(0, h(-1)), (0, h(-3))]).unwrap();
    assert_eq!(s, State::term(mono(&p, &[(3, 0), (1, 0)]), -Scalar::one()));
}

#[test]
fn virasoro_two_point_function() {
    let p = fixtures::virasoro_half();
    let e = Engine::new(&p).unwrap();
    let s = e.apply_word(&[(0, h(4)), (0, h(-4))]).unwrap();
    assert_eq!(expectation(&s), Scalar::frac(1, 4));
}

#[test]
fn translation_examples() {
    let p = fixtures::fermion();
    let e = Engine::new(&p).unwrap();
    assert!(e.translate(&State::vacuum()).is_zero());
    let a = e.generator_state(0);
    assert_eq!(e.translate(&a), State::monomial(mono(&p, &[(3, 0)])));

    let v = fixtures::virasoro_half();
    let ev = Engine::new(&v).unwrap();
    assert_eq!(ev.translate(&ev.generator_state(0)), State::monomial(mono(&v, &[(6, 0)])));
}

/// `T` as the derivation `[T, X_{−j}] = (j − Δ + 1) X_{−j−1}`, independent of
/// the conformal vector.
fn derivation(e: &Engine, p: &AlgebraPresentation, s: &State) -> State {
    let mut out = State::zero();
    for (m, c) in s.iter() {
        let modes = m.modes();
        for i in 0..modes.len() {
            let d2 = p.generators[modes[i].gen].delta.twice();
            let factor = Rat::half(modes[i].j2 - d2 + 2);
            let word: Vec<(usize, HalfInt)> = modes
                .iter()
                .enumerate()
                .map(|(k, md)| (md.gen, h(if k == i { -md.j2 - 2 } else { -md.j2 })))
                .collect();
            let t = e.apply_word(&word).unwrap();
            out.add_scaled(&t, &c.scale_rat(&factor));
        }
    }
    out
}

#[test]
fn translation_matches_derivation() {
    for (name, p) in fixtures::builtins() {
        let e = Engine::new(&p).unwrap();
        for w2 in 0..=5 {
            for m in basis(&p, h(w2)) {
                let s = State::monomial(m.clone());
                assert_eq!(e.translate(&s), derivation(&e, &p, &s), "{name}: T on {}", m.display(&p.generators));
            }
        }
    }
}

#[test]
fn l0_is_the_grading() {
    for (name, p) in fixtures::builtins() {
        let e = Engine::new(&p).unwrap();
        let max = if name == "bershadsky_polyakov" { 6 } else { 8 };
        for w2 in 0..=max {
            for m in basis(&p, h(w2)) {
                let s = State::monomial(m.clone());
                assert_eq!(e.l0(&s), s.scale(&Scalar::from_rat(Rat::half(w2))), "{name}: {}", m.display(&p.generators));
            }
        }
    }
}

#[test]
fn generators_are_primary() {
    for (name, p) in fixtures::builtins() {
        let e = Engine::new(&p).unwrap();
        for (x, g) in p.generators.iter().enumerate() {
            let r = e.check_primary(x, 4).unwrap();
            if name == "virasoro" || g.name == "L" {
                // the conformal vector itself is quasiprimary only when c = 0
                assert!(r.is_quasiprimary() && r.l0_defect.is_none(), "{name}: {}", g.name);
            } else {
                assert!(r.is_primary(), "{name}: {} {r:?}", g.name);
            }
        }
    }
}

#[test]
fn corrupted_table_fails_primary_check() {
    let mut p = fixtures::bershadsky_polyakov();
    let g = p.generator_index("G^u1").unwrap();
    let l = p.generator_index("L").unwrap();
    // break entry(L, G, 1) = (3/2) G
    p.brackets.set(l, g, 1, NOPoly::generator(g));
    let e = Engine::new_unchecked(&p);
    let r = e.check_primary(g, 3).unwrap();
    assert!(!r.is_primary());
}

#[test]
fn commutators_consistent_for_builtins() {
    for (name, p) in fixtures::builtins() {
        let e = Engine::new(&p).unwrap();
        let fail = e.check_all_commutators(h(5)).unwrap();
        assert!(fail.is_none(), "{name}: {:?}", fail.map(|f| (f.x, f.m, f.y, f.n, f.state.display(&p.generators).to_string())));
    }
}

#[test]
fn fault_injected_table_fails_commutator_check() {
    let mut p = fixtures::affine_sl2();
    // [e_λ f] = 2h + λk: violates Jacobi
    p.brackets.set(0, 2, 0, NOPoly::generator(1).scale(&Scalar::from_int(2)));
    let e = Engine::new_unchecked(&p);
    assert!(e.check_all_commutators(h(4)).unwrap().is_some());
}

#[test]
fn fermion_anticommutator_both_ways() {
    let p = fixtures::fermion();
    let e = Engine::new(&p).unwrap();
    let c = e.check_commutator(0, h(1), 0, h(-1), &State::vacuum()).unwrap();
    assert!(c.passed());
    assert_eq!(c.rhs, State::vacuum());
}

#[test]
fn central_charges() {
    assert_eq!(central_charge(&fixtures::fermion()).unwrap(), Scalar::frac(1, 2));
    assert_eq!(central_charge(&fixtures::virasoro_half()).unwrap(), Scalar::frac(1, 2));
    for (name, p) in fixtures::builtins() {
        let c = central_charge(&p).unwrap();
        assert_eq!(Some(c), p.central_charge.clone(), "{name}");
    }
    let t = tensor(&fixtures::affine_sl2(), &fixtures::neveu_schwarz()).unwrap();
    let sum = &central_charge(&fixtures::affine_sl2()).unwrap() + &central_charge(&fixtures::neveu_schwarz()).unwrap();
    assert_eq!(central_charge(&t).unwrap(), sum);
}

#[test]
fn bershadsky_polyakov_central_charge_formula() {
    let c = central_charge(&fixtures::bershadsky_polyakov()).unwrap();
    let k = Scalar::k();
    let expected = &(&k.scale_rat(&Rat::from_int(8)) / &(&k + &Scalar::from_int(3)))
        - &(&k.scale_rat(&Rat::from_int(6)) + &Scalar::from_int(1));
    assert_eq!(c, expected);
}

#[test]
fn state_field_round_trip() {
    for (name, p) in fixtures::builtins() {
        let e = Engine::new(&p).unwrap();
        for w2 in 0..=5 {
            for m in basis(&p, h(w2)) {
                let s = State::monomial(m.clone());
                assert_eq!(e.state_of(&e.state_field(&s)), s, "{name}: {}", m.display(&p.generators));
            }
        }
    }
}

#[test]
fn lincomb_mode_is_linear() {
    let p = fixtures::affine_sl2();
    let e = Engine::new(&p).unwrap();
    let lc = LinComb::from_terms([(0, GaussRat::one()), (2, GaussRat::i())]);
    let s = e.apply_lincomb_mode(&lc, h(-2), &State::vacuum()).unwrap();
    let mut expected = e.generator_state(0);
    expected.add_scaled(&e.generator_state(2), &Scalar::i());
    assert_eq!(s, expected);
}

fn word_strategy(n_gens: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..n_gens, -4i64..=2), 1..=4)
}

/// Put a raw mode offset into the generator's coset.
fn coset_word(p: &AlgebraPresentation, raw: &[(usize, i64)]) -> Vec<(usize, HalfInt)> {
    raw.iter()
        .map(|&(g, n)| {
            let d2 = p.generators[g].delta.twice();
            (g, h(2 * n - d2 % 2))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn grading_and_parity_preserved(idx in 0usize..9, raw in word_strategy(6)) {
        let (_, p) = fixtures::builtins().swap_remove(idx);
        let raw: Vec<(usize, i64)> = raw.into_iter().map(|(g, n)| (g % p.len(), n)).collect();
        let word = coset_word(&p, &raw);
        let e = Engine::new(&p).unwrap();
        let s = e.apply_word(&word).unwrap();
        let w2: i64 = -word.iter().map(|(_, n)| n.twice()).sum::<i64>();
        let par: u8 = word.iter().map(|(g, _)| p.generators[*g].parity).sum::<u8>() % 2;
        for (m, _) in s.iter() {
            prop_assert_eq!(m.weight2(), w2);
            prop_assert_eq!(m.parity(&p.generators), par);
        }
    }

    #[test]
    fn straightening_is_confluent(idx in 0usize..9, raw in word_strategy(6), pos in 0usize..3) {
        let (_, p) = fixtures::builtins().swap_remove(idx);
        let raw: Vec<(usize, i64)> = raw.into_iter().map(|(g, n)| (g % p.len(), n)).collect();
        prop_assume!(raw.len() >= 2);
        let word = coset_word(&p, &raw);
        let total: i64 = -word.iter().map(|(_, n)| n.twice()).sum::<i64>();
        prop_assume!(total <= 8);
        let e = Engine::new(&p).unwrap();
        let i = pos % (word.len() - 1);
        // X Y s = ±Y X s + [X, Y] s evaluated with the product swapped.
        let tail = e.apply_word(&word[i + 2..]).unwrap();
        let (x, m) = word[i];
        let (y, n) = word[i + 1];
        let direct = e.apply_mode(x, m, &e.apply_mode(y, n, &tail).unwrap()).unwrap();
        let swapped = e.apply_mode(y, n, &e.apply_mode(x, m, &tail).unwrap()).unwrap();
        let odd = p.generators[x].parity * p.generators[y].parity == 1;
        let mut reordered = swapped.scale(&Scalar::from_int(if odd { -1 } else { 1 }));
        reordered = reordered.add(&e.commutator(x, m, y, n, &tail).unwrap());
        let mut lhs = direct;
        let mut rhs = reordered;
        for &(g, md) in word[..i].iter().rev() {
            lhs = e.apply_mode(g, md, &lhs).unwrap();
            rhs = e.apply_mode(g, md, &rhs).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn residue_sides_agree(m in -6i64..=6, n in -6i64..=6, k2 in -12i64..=12) {
        let k = Rat::half(k2);
        let mm = &Rat::from_int(m) - &Rat::half(k2.rem_euclid(2));
        let (l, r) = residue_identity(&mm, &Rat::from_int(n), &k).unwrap();
        prop_assert_eq!(l, r);
    }
}
