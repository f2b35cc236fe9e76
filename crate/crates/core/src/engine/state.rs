use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::presentation::{GenId, GeneratorDecl};
use crate::scalar::{HalfInt, Scalar};

/// A creation mode `X_{−j}` with `j` stored in half-units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    /// Twice the depth `j`.
    pub j2: i64,
    pub gen: GenId,
}

impl Mode {
    pub fn new(j: HalfInt, gen: GenId) -> Self {
        Mode { j2: j.twice(), gen }
    }

    pub fn depth(self) -> HalfInt {
        HalfInt::from_twice(self.j2)
    }
}

/// Canonical order: deeper modes first, then increasing generator index.
impl Ord for Mode {
    fn cmp(&self, other: &Self) -> Ordering {
        other.j2.cmp(&self.j2).then(self.gen.cmp(&other.gen))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `X^{(1)}_{−j₁} ⋯ X^{(r)}_{−j_r}|0⟩` with modes in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    modes: Vec<Mode>,
}

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial { modes: Vec::new() }
    }

    /// Build from modes in any order; `None` if an odd mode repeats or some
    /// depth lies outside `Δ + ℤ≥0`.
    pub fn from_modes(mut modes: Vec<Mode>, gens: &[GeneratorDecl]) -> Option<Self> {
        modes.sort();
        for w in modes.windows(2) {
            if w[0] == w[1] && gens[w[0].gen].parity == 1 {
                return None;
            }
        }
        for m in &modes {
            let d2 = gens.get(m.gen)?.delta.twice();
            if m.j2 < d2 || (m.j2 - d2) % 2 != 0 {
                return None;
            }
        }
        Some(Monomial { modes })
    }

    /// Build from modes already known to be canonical.
    pub(crate) fn from_sorted(modes: Vec<Mode>) -> Self {
        debug_assert!(modes.windows(2).all(|w| w[0] <= w[1]));
        Monomial { modes }
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn is_vacuum(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn weight2(&self) -> i64 {
        self.modes.iter().map(|m| m.j2).sum()
    }

    pub fn weight(&self) -> HalfInt {
        HalfInt::from_twice(self.weight2())
    }

    pub fn parity(&self, gens: &[GeneratorDecl]) -> u8 {
        self.modes.iter().map(|m| gens[m.gen].parity).sum::<u8>() % 2
    }

    pub(crate) fn split_first(&self) -> Option<(Mode, Monomial)> {
        let (first, rest) = self.modes.split_first()?;
        Some((*first, Monomial { modes: rest.to_vec() }))
    }

    pub(crate) fn prepend(&self, mode: Mode) -> Monomial {
        let mut modes = Vec::with_capacity(self.modes.len() + 1);
        modes.push(mode);
        modes.extend_from_slice(&self.modes);
        Monomial { modes }
    }

    /// Render with generator names, e.g. `a_{-3/2}a_{-1/2}|0>`.
    pub fn display<'a>(&'a self, gens: &'a [GeneratorDecl]) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, gens }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    gens: &'a [GeneratorDecl],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.m.modes {
            let name = self.gens.get(m.gen).map(|g| g.name.as_str()).unwrap_or("?");
            write!(f, "{name}_{{-{}}}", m.depth())?;
        }
        write!(f, "|0>")
    }
}

/// Finite combination of PBW monomials; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct State {
    terms: BTreeMap<Monomial, Scalar>,
}

impl State {
    pub fn zero() -> Self {
        State::default()
    }

    pub fn vacuum() -> Self {
        State::monomial(Monomial::vacuum())
    }

    pub fn monomial(m: Monomial) -> Self {
        State::term(m, Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut s = State::zero();
        s.add_term(m, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &State, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), if c.is_one() { v.clone() } else { v * c });
        }
    }

    pub fn add(&self, other: &State) -> State {
        let mut s = self.clone();
        s.add_scaled(other, &Scalar::one());
        s
    }

    pub fn sub(&self, other: &State) -> State {
        let mut s = self.clone();
        s.add_scaled(other, &-Scalar::one());
        s
    }

    pub fn scale(&self, c: &Scalar) -> State {
        let mut s = State::zero();
        s.add_scaled(self, c);
        s
    }

    /// Coefficient-wise complex conjugation (fixing `k`).
    pub fn conj(&self) -> State {
        State { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Apply a map to each coefficient, dropping zeros.
    pub fn map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<State, E> {
        let mut s = State::zero();
        for (m, c) in &self.terms {
            s.add_term(m.clone(), f(c)?);
        }
        Ok(s)
    }

    /// Common twice-weight of all monomials; `None` if empty or inhomogeneous.
    pub fn weight2(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::weight2);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight2().is_some()
    }

    /// Common parity of all monomials; `None` if empty or mixed.
    pub fn parity(&self, gens: &[GeneratorDecl]) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity(gens));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Render with generator names in canonical monomial order.
    pub fn display<'a>(&'a self, gens: &'a [GeneratorDecl]) -> impl fmt::Display + 'a {
        StateDisplay { s: self, gens }
    }
}

impl FromIterator<(Monomial, Scalar)> for State {
    fn from_iter<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Self {
        let mut s = State::zero();
        for (m, c) in iter {
            s.add_term(m, c);
        }
        s
    }
}

struct StateDisplay<'a> {
    s: &'a State,
    gens: &'a [GeneratorDecl],
}

impl fmt::Display for StateDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.s.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", m.display(self.gens))?;
        }
        Ok(())
    }
}

/// Coefficient of the vacuum monomial.
pub fn expectation(s: &State) -> Scalar {
    s.coeff(&Monomial::vacuum())
}
