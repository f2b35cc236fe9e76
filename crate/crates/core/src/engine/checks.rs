use crate::presentation::GenId;
use crate::scalar::HalfInt;

use super::kernel::Engine;
use super::state::State;
use super::EngineError;

/// Result of applying `L_n`, `1 ≤ n ≤ max_n`, to a generator.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimaryReport {
    pub generator: GenId,
    pub max_n: u32,
    /// `L_0 X − Δ X` when nonzero.
    pub l0_defect: Option<State>,
    /// The first `n ≥ 1` with `L_n X ≠ 0`, and that state.
    pub failure: Option<(u32, State)>,
}

impl PrimaryReport {
    pub fn is_primary(&self) -> bool {
        self.l0_defect.is_none() && self.failure.is_none()
    }

    /// `L_1 X = 0` (and `L_0 X = Δ X`).
    pub fn is_quasiprimary(&self) -> bool {
        self.l0_defect.is_none() && self.failure.as_ref().is_none_or(|(n, _)| *n > 1)
    }
}

/// Both sides of a commutator identity evaluated on a state.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorCheck {
    /// `X_m(Y_n s) − p(X,Y) Y_n(X_m s)`, each side straightened independently.
    pub lhs: State,
    /// `Σ_t C(m+Δ_X−1, t) (X_{(t)}Y)_{m+n} s`.
    pub rhs: State,
}

impl CommutatorCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// A failing instance found by [`Engine::check_all_commutators`].
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorFailure {
    pub x: GenId,
    pub m: HalfInt,
    pub y: GenId,
    pub n: HalfInt,
    pub state: State,
    pub check: CommutatorCheck,
}

impl Engine {
    pub fn check_primary(&self, x: GenId, max_n: u32) -> Result<PrimaryReport, EngineError> {
        if x >= self.presentation().len() {
            return Err(EngineError::UnknownGenerator(x));
        }
        if max_n == 0 {
            return Err(EngineError::Precondition("check_primary needs max_n ≥ 1".into()));
        }
        let v = self.generator_state(x);
        let delta = crate::scalar::Scalar::from_rat(self.presentation().generators[x].delta.to_rat());
        let l0 = self.l0(&v).sub(&v.scale(&delta));
        let mut failure = None;
        for n in 1..=max_n {
            let s = self.conformal_mode(n as i64, &v);
            if !s.is_zero() {
                failure = Some((n, s));
                break;
            }
        }
        Ok(PrimaryReport { generator: x, max_n, l0_defect: (!l0.is_zero()).then_some(l0), failure })
    }

    pub fn check_commutator(
        &self,
        x: GenId,
        m: HalfInt,
        y: GenId,
        n: HalfInt,
        s: &State,
    ) -> Result<CommutatorCheck, EngineError> {
        let xy = self.apply_mode(x, m, &self.apply_mode(y, n, s)?)?;
        let yx = self.apply_mode(y, n, &self.apply_mode(x, m, s)?)?;
        let odd = self.gen_parity(x) * self.gen_parity(y) == 1;
        let lhs = if odd { xy.add(&yx) } else { xy.sub(&yx) };
        let rhs = self.commutator(x, m, y, n, s)?;
        Ok(CommutatorCheck { lhs, rhs })
    }

    /// Run `check_commutator` for every pair of generators, every basis state
    /// of weight at most `max_w`, and every pair of modes that can give a
    /// nonzero result. Returns the first failure.
    pub fn check_all_commutators(
        &self,
        max_w: HalfInt,
    ) -> Result<Option<CommutatorFailure>, EngineError> {
        let n = self.presentation().len();
        for w2 in 0..=max_w.twice() {
            for mono in super::basis(self.presentation(), HalfInt::from_twice(w2)) {
                let s = State::monomial(mono);
                for x in 0..n {
                    for y in 0..n {
                        for m2 in self.mode_range(x, w2, max_w.twice()) {
                            for n2 in self.mode_range(y, w2, max_w.twice()) {
                                if w2 - m2 - n2 < 0 || w2 - m2 - n2 > max_w.twice() {
                                    continue;
                                }
                                let (m, nn) = (HalfInt::from_twice(m2), HalfInt::from_twice(n2));
                                let c = self.check_commutator(x, m, y, nn, &s)?;
                                if !c.passed() {
                                    return Ok(Some(CommutatorFailure { x, m, y, n: nn, state: s, check: c }));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Twice-mode indices in `−Δ_X + ℤ` keeping a weight-`w2` state within `[0, max2]`.
    fn mode_range(&self, x: GenId, w2: i64, max2: i64) -> impl Iterator<Item = i64> {
        let d2 = self.twice_delta(x);
        (w2 - max2..=w2).filter(move |n2| (n2 + d2).rem_euclid(2) == 0)
    }
}
