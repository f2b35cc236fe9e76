//! The straightening kernel.
//!
//! Every field that can act on a state is interned: generators, their
//! derivatives, and right-nested normally ordered products of those. Modes are
//! applied one PBW monomial at a time and memoised on `(field, mode, monomial)`.
//!
//! A generator mode `X_n` meeting a monomial `Y_{−j}R` is
//!
//! * prepended when it is a creation mode that sorts strictly before `Y_{−j}`
//!   (or equal to it, for even `X`);
//! * replaced by `½[X_n, X_n]₊ R` when it is the same odd creation mode;
//! * otherwise commuted through: `X_n Y_{−j} R = ±Y_{−j}(X_n R) + [X_n, Y_{−j}] R`.
//!
//! Each rewrite either lowers the number of modes or moves a mode towards its
//! canonical slot, so the recursion terminates; debug builds assert a depth
//! bound.

use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::rc::Rc;

use crate::presentation::{validate, AlgebraPresentation, Factor, GenId, LinComb, NOPoly, PresentationError};
use crate::scalar::{HalfInt, Rat, Scalar};

use super::state::{expectation, Mode, Monomial, State};
use super::EngineError;

pub type FieldId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FieldKind {
    Vacuum,
    /// `T^deriv X_gen`.
    Gen { gen: GenId, deriv: u32 },
    /// `:head tail:` with `head` a `Gen` field.
    Product { head: FieldId, tail: FieldId },
}

#[derive(Clone, Copy, Debug)]
struct FieldInfo {
    kind: FieldKind,
    d2: i64,
    parity: u8,
}

/// An interned `NOPoly`: `Σ c · field`.
#[derive(Clone, Debug, Default)]
pub struct FieldComb {
    terms: Vec<(Scalar, FieldId)>,
}

type ModeKey = (usize, i64, Monomial);

#[cfg(debug_assertions)]
const DEPTH_LIMIT: usize = 100_000;

/// Straightening engine over one presentation. Not thread-safe: the memo
/// tables use interior mutability. Create one engine per thread.
pub struct Engine {
    p: AlgebraPresentation,
    d2: Vec<i64>,
    parity: Vec<u8>,
    fields: RefCell<Vec<FieldInfo>>,
    field_ids: RefCell<HashMap<Vec<Factor>, FieldId>>,
    brackets: HashMap<(GenId, GenId), Vec<(u32, FieldComb)>>,
    conformal: FieldComb,
    gen_cache: RefCell<HashMap<ModeKey, Rc<State>>>,
    field_cache: RefCell<HashMap<ModeKey, Rc<State>>>,
    depth: Cell<usize>,
}

fn sign_scalar(c: &Scalar, negative: bool) -> Scalar {
    if negative {
        -c
    } else {
        c.clone()
    }
}

fn ceil_half(a: i64) -> i64 {
    -((-a).div_euclid(2))
}

impl Engine {
    /// Engine over a validated presentation.
    pub fn new(p: &AlgebraPresentation) -> Result<Engine, EngineError> {
        let issues = validate(p);
        if !issues.is_empty() {
            return Err(PresentationError::Invalid(issues).into());
        }
        Ok(Engine::new_unchecked(p))
    }

    /// Engine without validating the presentation. Structural problems (for
    /// instance a non-Jacobi table) surface in the consistency checks.
    pub fn new_unchecked(p: &AlgebraPresentation) -> Engine {
        let mut e = Engine {
            p: p.clone(),
            d2: p.generators.iter().map(|g| g.delta.twice()).collect(),
            parity: p.generators.iter().map(|g| g.parity).collect(),
            fields: RefCell::new(Vec::new()),
            field_ids: RefCell::new(HashMap::new()),
            brackets: HashMap::new(),
            conformal: FieldComb::default(),
            gen_cache: RefCell::new(HashMap::new()),
            field_cache: RefCell::new(HashMap::new()),
            depth: Cell::new(0),
        };
        let mut brackets: HashMap<(GenId, GenId), Vec<(u32, FieldComb)>> = HashMap::new();
        for (&(i, j, t), poly) in p.brackets.iter() {
            let comb = e.intern_poly(poly);
            brackets.entry((i, j)).or_default().push((t, comb));
        }
        e.brackets = brackets;
        e.conformal = e.intern_poly(&p.conformal.as_nopoly());
        e
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.p
    }

    /// Drop all memoised mode actions.
    pub fn clear_cache(&self) {
        self.gen_cache.borrow_mut().clear();
        self.field_cache.borrow_mut().clear();
    }

    /// Number of memoised mode actions.
    pub fn cache_len(&self) -> usize {
        self.gen_cache.borrow().len() + self.field_cache.borrow().len()
    }

    fn intern(&self, factors: &[Factor]) -> FieldId {
        if let Some(&id) = self.field_ids.borrow().get(factors) {
            return id;
        }
        let (kind, d2, parity) = match factors {
            [] => (FieldKind::Vacuum, 0, 0),
            [f] => (FieldKind::Gen { gen: f.gen, deriv: f.deriv }, self.d2[f.gen] + 2 * f.deriv as i64, self.parity[f.gen]),
            [f, rest @ ..] => {
                let head = self.intern(&[*f]);
                let tail = self.intern(rest);
                let fs = self.fields.borrow();
                let (h, t) = (fs[head], fs[tail]);
                (FieldKind::Product { head, tail }, h.d2 + t.d2, (h.parity + t.parity) % 2)
            }
        };
        let mut fs = self.fields.borrow_mut();
        let id = fs.len();
        fs.push(FieldInfo { kind, d2, parity });
        self.field_ids.borrow_mut().insert(factors.to_vec(), id);
        id
    }

    pub fn intern_poly(&self, poly: &NOPoly) -> FieldComb {
        FieldComb { terms: poly.terms.iter().map(|t| (t.coeff.clone(), self.intern(&t.factors))).collect() }
    }

    fn info(&self, f: FieldId) -> FieldInfo {
        self.fields.borrow()[f]
    }

    fn check_gen(&self, x: GenId) -> Result<(), EngineError> {
        if x >= self.d2.len() {
            Err(EngineError::UnknownGenerator(x))
        } else {
            Ok(())
        }
    }

    fn check_coset(&self, x: GenId, n: HalfInt) -> Result<(), EngineError> {
        self.check_gen(x)?;
        if (n.twice() + self.d2[x]).rem_euclid(2) != 0 {
            return Err(EngineError::ModeCoset {
                generator: self.p.generators[x].name.clone(),
                mode: n,
                delta: self.p.generators[x].delta,
            });
        }
        Ok(())
    }

    // ---- per-monomial kernel -------------------------------------------------

    fn enter(&self) {
        let d = self.depth.get() + 1;
        #[cfg(debug_assertions)]
        debug_assert!(d < DEPTH_LIMIT, "straightening exceeded its depth bound");
        self.depth.set(d);
    }

    fn leave(&self) {
        self.depth.set(self.depth.get() - 1);
    }

    /// `X_n m` with `n = n2/2` in the shifted convention.
    fn gen_mode_mono(&self, x: GenId, n2: i64, m: &Monomial) -> Rc<State> {
        if m.weight2() - n2 < 0 {
            return Rc::new(State::zero());
        }
        let creation = -n2 >= self.d2[x];
        let first = match m.modes().first() {
            None => {
                return Rc::new(if creation {
                    State::monomial(Monomial::from_sorted(vec![Mode { j2: -n2, gen: x }]))
                } else {
                    State::zero()
                })
            }
            Some(f) => *f,
        };
        if creation {
            let mode = Mode { j2: -n2, gen: x };
            if mode < first || (mode == first && self.parity[x] == 0) {
                return Rc::new(State::monomial(m.prepend(mode)));
            }
        }
        let key = (x, n2, m.clone());
        if let Some(s) = self.gen_cache.borrow().get(&key) {
            return s.clone();
        }
        self.enter();
        let (first, rest) = m.split_first().expect("nonempty");
        let mut out = State::zero();
        if creation && first == (Mode { j2: -n2, gen: x }) {
            // X_n X_n R = ½ [X_n, X_n]₊ R for odd X.
            let c = self.commutator_mono(x, n2, x, n2, &rest);
            out.add_scaled(&c, &Scalar::frac(1, 2));
        } else {
            let inner = self.gen_mode_mono(x, n2, &rest);
            let negative = self.parity[x] * self.parity[first.gen] == 1;
            for (mono, c) in inner.iter() {
                let moved = self.gen_mode_mono(first.gen, -first.j2, mono);
                out.add_scaled(&moved, &sign_scalar(c, negative));
            }
            let comm = self.commutator_mono(x, n2, first.gen, -first.j2, &rest);
            out.add_scaled(&comm, &Scalar::one());
        }
        self.leave();
        let out = Rc::new(out);
        self.gen_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// `[X_n, Y_m]± R = Σ_t C(n+Δ_X−1, t) (X_{(t)}Y)_{n+m} R`.
    fn commutator_mono(&self, x: GenId, n2: i64, y: GenId, m2: i64, r: &Monomial) -> State {
        let mut out = State::zero();
        let Some(entries) = self.brackets.get(&(x, y)) else {
            return out;
        };
        let top = Rat::from_int((n2 + self.d2[x] - 2) / 2);
        for (t, comb) in entries {
            let b = Rat::binomial(&top, *t as u64);
            if b.is_zero() {
                continue;
            }
            for (c, f) in &comb.terms {
                let d2e = self.info(*f).d2;
                let q = (n2 + m2 + d2e - 2) / 2;
                let s = self.field_mode_mono(*f, q, r);
                out.add_scaled(&s, &c.scale_rat(&b));
            }
        }
        out
    }

    /// `F_{(q)} m` in the unshifted convention.
    fn field_mode_mono(&self, f: FieldId, q: i64, m: &Monomial) -> Rc<State> {
        let info = self.info(f);
        let w2 = m.weight2();
        if w2 - (2 * q - info.d2 + 2) < 0 {
            return Rc::new(State::zero());
        }
        match info.kind {
            FieldKind::Vacuum => Rc::new(if q == -1 { State::monomial(m.clone()) } else { State::zero() }),
            FieldKind::Gen { gen, deriv: 0 } => self.gen_mode_mono(gen, 2 * q - self.d2[gen] + 2, m),
            FieldKind::Gen { gen, deriv } => {
                // (T^d X)_{(q)} = (−1)^d q(q−1)⋯(q−d+1) X_{(q−d)}
                let mut coeff = Rat::one();
                for i in 0..deriv as i64 {
                    coeff = &coeff * &Rat::from_int(q - i);
                }
                if deriv % 2 == 1 {
                    coeff = -coeff;
                }
                if coeff.is_zero() {
                    return Rc::new(State::zero());
                }
                let s = self.gen_mode_mono(gen, 2 * (q - deriv as i64) - self.d2[gen] + 2, m);
                Rc::new(s.scale(&Scalar::from_rat(coeff)))
            }
            FieldKind::Product { head, tail } => {
                let key = (f, q, m.clone());
                if let Some(s) = self.field_cache.borrow().get(&key) {
                    return s.clone();
                }
                self.enter();
                let (hb, tc) = (self.info(head), self.info(tail));
                let mut out = State::zero();
                // Σ_{j<0} B_{(j)} C_{(q−j−1)}
                for j in ceil_half(2 * q - tc.d2 - w2)..0 {
                    let cs = self.field_mode_mono(tail, q - j - 1, m);
                    for (mono, c) in cs.iter() {
                        out.add_scaled(&self.field_mode_mono(head, j, mono), c);
                    }
                }
                // p(B,C) Σ_{j≥0} C_{(q−j−1)} B_{(j)}
                let negative = hb.parity * tc.parity == 1;
                let hi = (w2 + hb.d2 - 2).div_euclid(2);
                for j in 0..=hi {
                    let bs = self.field_mode_mono(head, j, m);
                    for (mono, c) in bs.iter() {
                        out.add_scaled(&self.field_mode_mono(tail, q - j - 1, mono), &sign_scalar(c, negative));
                    }
                }
                self.leave();
                let out = Rc::new(out);
                self.field_cache.borrow_mut().insert(key, out.clone());
                out
            }
        }
    }

    fn map_state(&self, s: &State, f: impl Fn(&Monomial) -> Rc<State>) -> State {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_scaled(&f(m), c);
        }
        out
    }

    // ---- public mode actions -------------------------------------------------

    /// `X_n s` in the shifted convention; `n` must lie in `−Δ_X + ℤ`.
    pub fn apply_mode(&self, x: GenId, n: HalfInt, s: &State) -> Result<State, EngineError> {
        self.check_coset(x, n)?;
        Ok(self.map_state(s, |m| self.gen_mode_mono(x, n.twice(), m)))
    }

    /// `X_{(q)} s` in the unshifted convention.
    pub fn apply_unshifted(&self, x: GenId, q: i64, s: &State) -> Result<State, EngineError> {
        self.check_gen(x)?;
        let n2 = 2 * q - self.d2[x] + 2;
        Ok(self.map_state(s, |m| self.gen_mode_mono(x, n2, m)))
    }

    /// `(Σ c_i X_i)_n s` for a combination of generators sharing weight and parity.
    pub fn apply_lincomb_mode(&self, lc: &LinComb, n: HalfInt, s: &State) -> Result<State, EngineError> {
        let mut out = State::zero();
        for (x, c) in lc.terms() {
            let t = self.apply_mode(*x, n, s)?;
            out.add_scaled(&t, &Scalar::from_gauss(c.clone()));
        }
        Ok(out)
    }

    fn apply_comb_unshifted(&self, comb: &FieldComb, q_of: impl Fn(i64) -> Option<i64>, s: &State) -> Result<State, EngineError> {
        let mut out = State::zero();
        for (c, f) in &comb.terms {
            let d2 = self.info(*f).d2;
            let q = q_of(d2).ok_or(EngineError::FieldCoset { weight: HalfInt::from_twice(d2) })?;
            let t = self.map_state(s, |m| self.field_mode_mono(*f, q, m));
            out.add_scaled(&t, c);
        }
        Ok(out)
    }

    /// `A_{(q)} s` for a normally ordered polynomial `A`.
    pub fn apply_field_unshifted(&self, a: &NOPoly, q: i64, s: &State) -> Result<State, EngineError> {
        let comb = self.intern_poly(a);
        self.apply_comb_unshifted(&comb, |_| Some(q), s)
    }

    /// `A_n s` in the shifted convention, term by term.
    pub fn apply_field(&self, a: &NOPoly, n: HalfInt, s: &State) -> Result<State, EngineError> {
        let comb = self.intern_poly(a);
        let n2 = n.twice();
        self.apply_comb_unshifted(&comb, |d2| ((n2 + d2) % 2 == 0).then(|| (n2 + d2 - 2) / 2), s)
    }

    /// The state `A_{(−1)}|0⟩` of a field.
    pub fn state_of(&self, a: &NOPoly) -> State {
        self.apply_field_unshifted(a, -1, &State::vacuum()).expect("integral mode")
    }

    /// Apply `X^{(1)}_{n₁} ⋯ X^{(r)}_{n_r}` to the vacuum (rightmost first).
    pub fn apply_word(&self, word: &[(GenId, HalfInt)]) -> Result<State, EngineError> {
        let mut s = State::vacuum();
        for &(x, n) in word.iter().rev() {
            s = self.apply_mode(x, n, &s)?;
        }
        Ok(s)
    }

    /// `L_n s`.
    pub fn conformal_mode(&self, n: i64, s: &State) -> State {
        self.apply_comb_unshifted(&self.conformal, |_| Some(n + 1), s).expect("integral mode")
    }

    /// `T s = L_{−1} s`.
    pub fn translate(&self, s: &State) -> State {
        self.conformal_mode(-1, s)
    }

    /// `L_0 s`.
    pub fn l0(&self, s: &State) -> State {
        self.conformal_mode(0, s)
    }

    /// Generator state `X_{−Δ}|0⟩`.
    pub fn generator_state(&self, x: GenId) -> State {
        State::monomial(Monomial::from_sorted(vec![Mode { j2: self.d2[x], gen: x }]))
    }

    /// `c = 2⟨L_2 L_{−2}|0⟩⟩`.
    pub fn central_charge(&self) -> Scalar {
        let l = self.state_of(&self.p.conformal.as_nopoly());
        let v = self.conformal_mode(2, &l);
        expectation(&v).scale_rat(&Rat::from_int(2))
    }

    /// `[X_m, Y_n]± s` computed from the bracket table alone.
    pub fn commutator(&self, x: GenId, m: HalfInt, y: GenId, n: HalfInt, s: &State) -> Result<State, EngineError> {
        self.check_coset(x, m)?;
        self.check_coset(y, n)?;
        let mut out = State::zero();
        for (mono, c) in s.iter() {
            out.add_scaled(&self.commutator_mono(x, m.twice(), y, n.twice(), mono), c);
        }
        Ok(out)
    }

    /// Field equal to the state of a monomial:
    /// `X_{−Δ−m}|0⟩ ↦ T^m X / m!`, nested in monomial order.
    pub fn monomial_field(&self, m: &Monomial) -> NOPoly {
        let mut coeff = Rat::one();
        let mut factors = Vec::with_capacity(m.len());
        for mode in m.modes() {
            let d = ((mode.j2 - self.d2[mode.gen]) / 2) as u32;
            for i in 1..=d as i64 {
                coeff = &coeff / &Rat::from_int(i);
            }
            factors.push(Factor::new(d, mode.gen));
        }
        NOPoly::term(Scalar::from_rat(coeff), factors)
    }

    /// Field whose state is `s`.
    pub fn state_field(&self, s: &State) -> NOPoly {
        let mut p = NOPoly::zero();
        for (m, c) in s.iter() {
            p = p.add(&self.monomial_field(m).scale(c));
        }
        p
    }

    pub(crate) fn twice_delta(&self, x: GenId) -> i64 {
        self.d2[x]
    }

    pub(crate) fn gen_parity(&self, x: GenId) -> u8 {
        self.parity[x]
    }
}
