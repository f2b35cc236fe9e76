use crate::presentation::{AlgebraPresentation, GeneratorDecl};
use crate::scalar::HalfInt;

use super::state::{Mode, Monomial};

/// Creation modes of twice-depth at most `w2`, in canonical order.
fn modes_up_to(gens: &[GeneratorDecl], w2: i64) -> Vec<Mode> {
    let mut modes = Vec::new();
    for (gen, g) in gens.iter().enumerate() {
        let d2 = g.delta.twice();
        if d2 <= 0 {
            continue;
        }
        let mut j2 = d2;
        while j2 <= w2 {
            modes.push(Mode { j2, gen });
            j2 += 2;
        }
    }
    modes.sort();
    modes
}

fn extend(gens: &[GeneratorDecl], modes: &[Mode], start: usize, left: i64, acc: &mut Vec<Mode>, out: &mut Vec<Monomial>) {
    if left == 0 {
        out.push(Monomial::from_sorted(acc.clone()));
        return;
    }
    for i in start..modes.len() {
        let m = modes[i];
        if m.j2 > left {
            continue;
        }
        acc.push(m);
        let next = if gens[m.gen].parity == 1 { i + 1 } else { i };
        extend(gens, modes, next, left - m.j2, acc, out);
        acc.pop();
    }
}

/// All PBW monomials of weight exactly `w` in canonical order; weight 0 gives
/// only the vacuum.
pub fn basis(p: &AlgebraPresentation, w: HalfInt) -> Vec<Monomial> {
    basis_for(&p.generators, w)
}

pub fn basis_for(gens: &[GeneratorDecl], w: HalfInt) -> Vec<Monomial> {
    let w2 = w.twice();
    if w2 < 0 {
        return Vec::new();
    }
    let modes = modes_up_to(gens, w2);
    let mut out = Vec::new();
    extend(gens, &modes, 0, w2, &mut Vec::new(), &mut out);
    out.sort();
    out
}
