use std::collections::BTreeMap;

use crate::engine::{basis, expectation, Engine, Monomial, State};
use crate::presentation::{AlgebraPresentation, GenId, LinComb};
use crate::scalar::{phase_of_twice, GaussRat, HalfInt, Rat, Scalar};

use super::HermitianError;

/// A Laurent polynomial in `z` with state coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Laurent {
    pub terms: BTreeMap<i64, State>,
}

impl Laurent {
    fn add_term(&mut self, exp: i64, s: &State, c: &Scalar) {
        let e = self.terms.entry(exp).or_default();
        e.add_scaled(s, c);
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> State {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// True when the polynomial is `s · z⁰`.
    pub fn is_constant(&self, s: &State) -> bool {
        if s.is_zero() {
            return self.terms.is_empty();
        }
        self.terms.len() == 1 && self.terms.get(&0) == Some(s)
    }
}

/// The invariant Hermitian form of a presentation: `g`, `A(z)`, `ω` and the
/// pairing. The form is conjugate-linear in its **first** argument.
pub struct Hermitian {
    engine: Engine,
    /// `g(X) = (−i)^{2Δ+p} φ(X)` for each generator.
    g_images: Vec<LinComb>,
}

fn split_by_weight(s: &State) -> BTreeMap<i64, State> {
    let mut out: BTreeMap<i64, State> = BTreeMap::new();
    for (m, c) in s.iter() {
        out.entry(m.weight2()).or_default().add_term(m.clone(), c.clone());
    }
    out
}

impl Hermitian {
    /// Requires every generator to be quasiprimary.
    pub fn new(p: &AlgebraPresentation) -> Result<Hermitian, HermitianError> {
        Hermitian::from_engine(Engine::new(p)?)
    }

    pub fn from_engine(engine: Engine) -> Result<Hermitian, HermitianError> {
        let p = engine.presentation();
        for x in 0..p.len() {
            let r = engine.check_primary(x, 1)?;
            if !r.is_quasiprimary() {
                return Err(HermitianError::NotQuasiprimary { generator: p.generators[x].name.clone() });
            }
        }
        let g_images = p
            .generators
            .iter()
            .map(|g| g.phi.scale(&phase_of_twice(g.delta.twice(), g.parity).to_gauss()))
            .collect();
        Ok(Hermitian { engine, g_images })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        self.engine.presentation()
    }

    /// `g(X)` as a combination of generators.
    pub fn g_generator(&self, x: GenId) -> &LinComb {
        &self.g_images[x]
    }

    /// Apply a conjugate-linear map that acts mode by mode through the given
    /// generator images.
    fn conj_modewise(&self, s: &State, image: impl Fn(GenId) -> LinComb) -> State {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            let mut t = State::vacuum();
            for mode in m.modes().iter().rev() {
                t = self
                    .engine
                    .apply_lincomb_mode(&image(mode.gen), HalfInt::from_twice(-mode.j2), &t)
                    .expect("creation modes lie in their cosets");
            }
            out.add_scaled(&t, &c.conj());
        }
        out
    }

    /// The conjugate-linear automorphism `φ` extended to states.
    pub fn phi_apply(&self, s: &State) -> State {
        let gens = &self.presentation().generators;
        self.conj_modewise(s, |x| gens[x].phi.clone())
    }

    /// `g = (−i)^{2L_0 + p} φ` on states.
    pub fn g_apply(&self, s: &State) -> State {
        let gens = &self.presentation().generators;
        let mut out = State::zero();
        for (m, c) in s.iter() {
            let ph = phase_of_twice(m.weight2(), m.parity(gens)).to_gauss();
            let img = self.phi_apply(&State::term(m.clone(), c.clone()));
            out.add_scaled(&img, &Scalar::from_gauss(ph));
        }
        out
    }

    /// `A(z)s = Σ_r z^{r−2Δ} L_1^r g(s) / r!`, homogeneous pieces treated separately.
    pub fn a_operator(&self, s: &State) -> Laurent {
        let mut out = Laurent::default();
        for (w2, piece) in split_by_weight(s) {
            let mut t = self.g_apply(&piece);
            let mut fact = Rat::one();
            let mut r = 0i64;
            while !t.is_zero() {
                out.add_term(r - w2, &t, &Scalar::from_rat(fact.recip().expect("nonzero")));
                r += 1;
                fact = &fact * &Rat::from_int(r);
                t = self.engine.conformal_mode(1, &t);
            }
        }
        out
    }

    /// `A(z^{−1})(A(z)s)`, which is `s` itself.
    pub fn a_inverse_compose(&self, s: &State) -> Laurent {
        let mut out = Laurent::default();
        for (e1, t) in self.a_operator(s).terms {
            for (e2, u) in self.a_operator(&t).terms {
                out.add_term(e1 - e2, &u, &Scalar::one());
            }
        }
        out
    }

    /// `ω(s) = A(1)s = e^{L_1} g(s)`.
    pub fn omega_state(&self, s: &State) -> State {
        let mut out = State::zero();
        for (_, t) in self.a_operator(s).terms {
            out.add_scaled(&t, &Scalar::one());
        }
        out
    }

    /// `(u, v)` for a single monomial `u = X¹_{−j₁}⋯X^r_{−j_r}|0⟩`:
    /// `⟨g(X^r)_{j_r} ⋯ g(X¹)_{j₁} v⟩`.
    pub fn pair_monomial(&self, u: &Monomial, v: &State) -> Scalar {
        let mut s = v.clone();
        for mode in u.modes() {
            if s.is_zero() {
                break;
            }
            s = self
                .engine
                .apply_lincomb_mode(&self.g_images[mode.gen], HalfInt::from_twice(mode.j2), &s)
                .expect("annihilation modes lie in their cosets");
        }
        expectation(&s)
    }

    /// `(u, v)`, conjugate-linear in `u`.
    pub fn inner_product(&self, u: &State, v: &State) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in u.iter() {
            let w = m.weight2();
            let v_w: State = v.iter().filter(|(n, _)| n.weight2() == w).map(|(n, d)| (n.clone(), d.clone())).collect();
            if v_w.is_zero() {
                continue;
            }
            acc += &(&c.conj() * &self.pair_monomial(m, &v_w));
        }
        acc
    }

    /// Gram matrix of the PBW basis at weight `w`.
    pub fn gram(&self, w: HalfInt) -> GramMatrix {
        let basis = basis(self.presentation(), w);
        let states: Vec<State> = basis.iter().map(|m| State::monomial(m.clone())).collect();
        let entries = basis.iter().map(|u| states.iter().map(|v| self.pair_monomial(u, v)).collect()).collect();
        GramMatrix { weight: w, basis, entries }
    }

    /// Compare `(v, X_n u)` with `(g(X)_{−n} v, u)`.
    pub fn check_invariance(&self, x: GenId, n: HalfInt, u: &State, v: &State) -> Result<InvarianceCheck, HermitianError> {
        let lhs = self.inner_product(v, &self.engine.apply_mode(x, n, u)?);
        let gv = self.engine.apply_lincomb_mode(&self.g_images[x], HalfInt::from_twice(-n.twice()), v)?;
        let rhs = self.inner_product(&gv, u);
        Ok(InvarianceCheck { lhs, rhs })
    }

    /// `⟨X_Δ X_{−Δ}|0⟩⟩` for a `φ`-fixed generator, classified against the
    /// prediction from `(−1)^{2Δ+p}`.
    pub fn reality_check(&self, x: GenId, k0: Option<&Rat>) -> Result<RealityReport, HermitianError> {
        let p = self.presentation();
        let g = p.generators.get(x).ok_or(crate::engine::EngineError::UnknownGenerator(x))?;
        if g.phi != LinComb::basis(x) {
            return Err(HermitianError::Precondition(format!("φ does not fix {}", g.name)));
        }
        let d = g.delta;
        let s = self.engine.apply_word(&[(x, d), (x, HalfInt::from_twice(-d.twice()))])?;
        let value = expectation(&s);
        let value = match (value.as_constant(), k0) {
            (Some(c), _) => c,
            (None, Some(k0)) => value.specialize(k0)?,
            (None, None) => {
                return Err(HermitianError::Precondition(format!(
                    "⟨{0}_Δ {0}_-Δ⟩ = {value} depends on k; supply a level",
                    g.name
                )))
            }
        };
        let observed = Reality::of(&value);
        let expected = if (d.twice() + g.parity as i64) % 2 == 0 { Reality::Real } else { Reality::Imaginary };
        Ok(RealityReport { generator: x, value, observed, expected })
    }
}

/// `H[r][c] = (basis[r], basis[c])`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    pub weight: HalfInt,
    pub basis: Vec<Monomial>,
    pub entries: Vec<Vec<Scalar>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `H = H^*` with conjugation fixing `k`.
    pub fn is_hermitian(&self) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| self.entries[c][r] == self.entries[r][c].conj()))
    }

    pub fn specialize(&self, k0: &Rat) -> Result<Vec<Vec<GaussRat>>, HermitianError> {
        let mut out = Vec::with_capacity(self.dim());
        for (r, row) in self.entries.iter().enumerate() {
            let mut v = Vec::with_capacity(row.len());
            for (c, e) in row.iter().enumerate() {
                v.push(e.specialize(k0).map_err(|_| HermitianError::Pole { row: r, col: c, level: k0.clone(), entry: e.to_string() })?);
            }
            out.push(v);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceCheck {
    /// `(v, X_n u)`.
    pub lhs: Scalar,
    /// `(g(X)_{−n} v, u)`.
    pub rhs: Scalar,
}

impl InvarianceCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reality {
    Zero,
    Real,
    Imaginary,
    Mixed,
}

impl Reality {
    pub fn of(c: &GaussRat) -> Reality {
        match (c.re.is_zero(), c.im.is_zero()) {
            (true, true) => Reality::Zero,
            (false, true) => Reality::Real,
            (true, false) => Reality::Imaginary,
            (false, false) => Reality::Mixed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealityReport {
    pub generator: GenId,
    pub value: GaussRat,
    pub observed: Reality,
    /// `Real` when `(−1)^{2Δ+p} = 1`, else `Imaginary`.
    pub expected: Reality,
}

impl RealityReport {
    /// Observed class agrees with the parity prediction (a zero value is
    /// compatible only with a form that is not positive definite).
    pub fn consistent(&self) -> bool {
        self.observed == self.expected || self.observed == Reality::Zero
    }
}
