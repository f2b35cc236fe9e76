use crate::engine::{Engine, State};
use crate::presentation::AlgebraPresentation;
use crate::scalar::{Rat, Scalar};

use super::ZhuError;

/// `a * b = Σ_j C(Δ_a, j) a_{(−1+j)} b` computed in the vertex algebra itself,
/// without passing to the quotient.
pub fn zhu_star(p: &AlgebraPresentation, a: &State, b: &State) -> Result<State, ZhuError> {
    zhu_star_with(&Engine::new(p)?, a, b)
}

/// [`zhu_star`] on an existing engine.
pub fn zhu_star_with(e: &Engine, a: &State, b: &State) -> Result<State, ZhuError> {
    if a.is_zero() || b.is_zero() {
        return Ok(State::zero());
    }
    let w2a = a.weight2().ok_or(ZhuError::NonHomogeneous)?;
    let field = e.state_field(a);
    let delta = Rat::half(w2a);
    // a_{(q)} b vanishes once q exceeds Δ_a + Δ_b − 1.
    let top_b = b.iter().map(|(m, _)| m.weight2()).max().unwrap_or(0);
    let j_max = (w2a + top_b).div_euclid(2);
    let mut out = State::zero();
    for j in 0..=j_max {
        let c = Rat::binomial(&delta, j as u64);
        if c.is_zero() {
            continue;
        }
        let t = e.apply_field_unshifted(&field, j - 1, b)?;
        out.add_scaled(&t, &Scalar::from_rat(c));
    }
    Ok(out)
}
