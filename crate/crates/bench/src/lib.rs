//! Workloads shared by the benchmarks: fixed inputs built once, outside the
//! timed loops.

use vform::engine::{basis, State};
use vform::presentation::{fixtures, AlgebraPresentation};
use vform::{HalfInt, Poly, Rat, Scalar};

/// The affine sl(2) word `e_1 f_1 h_{−1} e_{−1} f_{−1} |0⟩`, rightmost first.
pub fn affine_word() -> (AlgebraPresentation, Vec<(usize, HalfInt)>) {
    let p = fixtures::affine_sl2();
    let (e, h, f) = (0, 1, 2);
    let word = vec![
        (e, HalfInt::from_int(1)),
        (f, HalfInt::from_int(1)),
        (h, HalfInt::from_int(-1)),
        (e, HalfInt::from_int(-1)),
        (f, HalfInt::from_int(-1)),
    ];
    (p, word)
}

/// Every basis vector of one weight space.
pub fn weight_space(p: &AlgebraPresentation, w: HalfInt) -> Vec<State> {
    basis(p, w).into_iter().map(State::monomial).collect()
}

/// A pair of rational functions in `k` with nontrivial denominators.
pub fn rational_pair() -> (Scalar, Scalar) {
    let lin = |a: i64, b: i64| Poly::from_rats(&[Rat::from_int(a), Rat::from_int(b)]);
    let x = Scalar::from_parts(lin(3, 1), lin(-1, 2)).expect("nonzero denominator");
    let y = Scalar::from_parts(lin(5, -2), lin(7, 1)).expect("nonzero denominator");
    (x, y)
}
