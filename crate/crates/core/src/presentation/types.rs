use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{GaussRat, HalfInt, Rat, Scalar, ScalarError};

use super::minimal_w::MinimalWDatum;

/// Index of a generator inside its presentation.
pub type GenId = usize;

/// Finite linear combination `Σ c_i x_i` over ℚ(i), kept sorted by index with
/// no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinComb(Vec<(usize, GaussRat)>);

impl LinComb {
    pub fn zero() -> Self {
        LinComb(Vec::new())
    }

    pub fn basis(i: usize) -> Self {
        LinComb(vec![(i, GaussRat::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, GaussRat)>>(terms: I) -> Self {
        let mut map: BTreeMap<usize, GaussRat> = BTreeMap::new();
        for (i, c) in terms {
            let e = map.entry(i).or_default();
            *e = &*e + &c;
        }
        LinComb(map.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn from_dense(v: &[GaussRat]) -> Self {
        LinComb::from_terms(v.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, n: usize) -> Vec<GaussRat> {
        let mut v = vec![GaussRat::zero(); n];
        for (i, c) in &self.0 {
            v[*i] = c.clone();
        }
        v
    }

    pub fn terms(&self) -> &[(usize, GaussRat)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> GaussRat {
        self.0.iter().find(|(j, _)| *j == i).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn scale(&self, c: &GaussRat) -> LinComb {
        LinComb::from_terms(self.0.iter().map(|(i, x)| (*i, x * c)))
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        LinComb::from_terms(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn conj(&self) -> LinComb {
        LinComb(self.0.iter().map(|(i, c)| (*i, c.conj())).collect())
    }

    /// Apply a conjugate-linear map given on basis vectors.
    pub fn apply_conj_linear(&self, image: impl Fn(usize) -> LinComb) -> LinComb {
        let mut acc = LinComb::zero();
        for (i, c) in &self.0 {
            acc = acc.add(&image(*i).scale(&c.conj()));
        }
        acc
    }

    /// Apply a linear map given on basis vectors.
    pub fn apply_linear(&self, image: impl Fn(usize) -> LinComb) -> LinComb {
        let mut acc = LinComb::zero();
        for (i, c) in &self.0 {
            acc = acc.add(&image(*i).scale(c));
        }
        acc
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|(i, _)| *i)
    }
}

/// One generator of a freely generated vertex superalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub delta: HalfInt,
    pub parity: u8,
    /// Image under the conjugate-linear involution φ.
    pub phi: LinComb,
}

/// `T^deriv X_gen` inside a normally ordered product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub deriv: u32,
    pub gen: GenId,
}

impl Factor {
    pub fn new(deriv: u32, gen: GenId) -> Self {
        Factor { deriv, gen }
    }

    pub fn gen(gen: GenId) -> Self {
        Factor { deriv: 0, gen }
    }
}

/// `coeff · :F_1(F_2(⋯ F_r)⋯):`, right-nested; no factors means a multiple of
/// the vacuum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NOTerm {
    pub coeff: Scalar,
    pub factors: Vec<Factor>,
}

impl NOTerm {
    pub fn new(coeff: Scalar, factors: Vec<Factor>) -> Self {
        NOTerm { coeff, factors }
    }

    pub fn vacuum(coeff: Scalar) -> Self {
        NOTerm { coeff, factors: Vec::new() }
    }

    /// Twice the conformal weight.
    pub fn weight2(&self, gens: &[GeneratorDecl]) -> i64 {
        self.factors.iter().map(|f| gens[f.gen].delta.twice() + 2 * f.deriv as i64).sum()
    }

    pub fn parity(&self, gens: &[GeneratorDecl]) -> u8 {
        self.factors.iter().map(|f| gens[f.gen].parity).sum::<u8>() % 2
    }
}

/// Sum of normally ordered terms; identical factor lists are merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NOPoly {
    pub terms: Vec<NOTerm>,
}

impl NOPoly {
    pub fn zero() -> Self {
        NOPoly { terms: Vec::new() }
    }

    pub fn vacuum(coeff: Scalar) -> Self {
        let mut p = NOPoly::zero();
        p.push(NOTerm::vacuum(coeff));
        p
    }

    pub fn generator(gen: GenId) -> Self {
        NOPoly::term(Scalar::one(), vec![Factor::gen(gen)])
    }

    pub fn term(coeff: Scalar, factors: Vec<Factor>) -> Self {
        let mut p = NOPoly::zero();
        p.push(NOTerm::new(coeff, factors));
        p
    }

    /// Linear combination of generators, `Σ c_i X_{offset+i}`, optionally
    /// differentiated `deriv` times.
    pub fn from_lincomb(lc: &LinComb, offset: usize, deriv: u32) -> Self {
        let mut p = NOPoly::zero();
        for (i, c) in lc.terms() {
            p.push(NOTerm::new(Scalar::from_gauss(c.clone()), vec![Factor::new(deriv, offset + i)]));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, term: NOTerm) {
        if term.coeff.is_zero() {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|t| t.factors == term.factors) {
            let c = &self.terms[pos].coeff + &term.coeff;
            if c.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].coeff = c;
            }
        } else {
            self.terms.push(term);
        }
    }

    pub fn add(&self, other: &NOPoly) -> NOPoly {
        let mut p = self.clone();
        for t in &other.terms {
            p.push(t.clone());
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> NOPoly {
        let mut p = NOPoly::zero();
        for t in &self.terms {
            p.push(NOTerm::new(&t.coeff * c, t.factors.clone()));
        }
        p
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Result<Scalar, ScalarError>) -> Result<NOPoly, ScalarError> {
        let mut p = NOPoly::zero();
        for t in &self.terms {
            p.push(NOTerm::new(f(&t.coeff)?, t.factors.clone()));
        }
        Ok(p)
    }

    pub fn shift_generators(&self, offset: usize) -> NOPoly {
        NOPoly {
            terms: self
                .terms
                .iter()
                .map(|t| NOTerm {
                    coeff: t.coeff.clone(),
                    factors: t.factors.iter().map(|f| Factor::new(f.deriv, f.gen + offset)).collect(),
                })
                .collect(),
        }
    }

    /// Common twice-weight of all terms, or `None` when empty or inhomogeneous.
    pub fn weight2(&self, gens: &[GeneratorDecl]) -> Option<i64> {
        let mut it = self.terms.iter().map(|t| t.weight2(gens));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Render with generator names, e.g. `2*:J^a(TG^u):`.
    pub fn display<'a>(&'a self, gens: &'a [GeneratorDecl]) -> impl fmt::Display + 'a {
        NOPolyDisplay { poly: self, gens }
    }
}

struct NOPolyDisplay<'a> {
    poly: &'a NOPoly,
    gens: &'a [GeneratorDecl],
}

impl fmt::Display for NOPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (n, t) in self.poly.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            if t.factors.is_empty() {
                write!(f, "*|0>")?;
                continue;
            }
            write!(f, "*:")?;
            for fac in &t.factors {
                let name = self.gens.get(fac.gen).map(|g| g.name.as_str()).unwrap_or("?");
                match fac.deriv {
                    0 => write!(f, "[{name}]")?,
                    1 => write!(f, "[T{name}]")?,
                    d => write!(f, "[T^{d}{name}]")?,
                }
            }
            write!(f, ":")?;
        }
        Ok(())
    }
}

/// Table of `(X_i)_{(t)} X_j` for all ordered generator pairs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LambdaBracketTable {
    entries: BTreeMap<(GenId, GenId, u32), NOPoly>,
}

impl LambdaBracketTable {
    pub fn new() -> Self {
        LambdaBracketTable::default()
    }

    /// Set `entry(i, j, t)`; a zero polynomial removes the entry.
    pub fn set(&mut self, i: GenId, j: GenId, t: u32, value: NOPoly) {
        if value.is_zero() {
            self.entries.remove(&(i, j, t));
        } else {
            self.entries.insert((i, j, t), value);
        }
    }

    /// Add to `entry(i, j, t)`.
    pub fn add(&mut self, i: GenId, j: GenId, t: u32, value: &NOPoly) {
        let cur = self.entries.remove(&(i, j, t)).unwrap_or_default();
        self.set(i, j, t, cur.add(value));
    }

    pub fn get(&self, i: GenId, j: GenId, t: u32) -> Option<&NOPoly> {
        self.entries.get(&(i, j, t))
    }

    /// All `(t, entry)` for the ordered pair `(i, j)`, increasing in `t`.
    pub fn pair(&self, i: GenId, j: GenId) -> impl Iterator<Item = (u32, &NOPoly)> {
        self.entries.range((i, j, 0)..=(i, j, u32::MAX)).map(|(&(_, _, t), p)| (t, p))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(GenId, GenId, u32), &NOPoly)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The Virasoro vector: either a generator or a composite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConformalVector {
    Generator(GenId),
    Composite(NOPoly),
}

impl ConformalVector {
    pub fn as_nopoly(&self) -> NOPoly {
        match self {
            ConformalVector::Generator(g) => NOPoly::generator(*g),
            ConformalVector::Composite(p) => p.clone(),
        }
    }
}

/// A freely generated conformal vertex superalgebra given by generators and
/// λ-brackets.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    pub name: String,
    pub generators: Vec<GeneratorDecl>,
    pub brackets: LambdaBracketTable,
    pub conformal: ConformalVector,
    /// Central charge declared by the builder, checked against the engine.
    pub central_charge: Option<Scalar>,
    /// The minimal-W datum when the presentation came from one.
    pub minimal_w: Option<Box<MinimalWDatum>>,
}

impl AlgebraPresentation {
    pub fn generator_index(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Every scalar coefficient in the presentation.
    fn coefficients(&self) -> impl Iterator<Item = &Scalar> {
        let table = self.brackets.iter().flat_map(|(_, p)| p.terms.iter().map(|t| &t.coeff));
        let conformal: Vec<&Scalar> = match &self.conformal {
            ConformalVector::Generator(_) => Vec::new(),
            ConformalVector::Composite(p) => p.terms.iter().map(|t| &t.coeff).collect(),
        };
        table.chain(conformal).chain(self.central_charge.iter())
    }

    /// True when some coefficient depends on the level.
    pub fn depends_on_level(&self) -> bool {
        self.coefficients().any(|c| !c.is_constant())
    }

    /// Rational levels at which some coefficient of the presentation has a pole.
    pub fn poles(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::new();
        for c in self.coefficients() {
            if c.denom().is_constant() {
                continue;
            }
            if let Ok(roots) = c.denom().rational_roots() {
                out.extend(roots);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The same presentation with the level fixed to `k0`.
    pub fn at_level(&self, k0: &Rat) -> Result<AlgebraPresentation, ScalarError> {
        let spec = |c: &Scalar| c.specialize_scalar(k0);
        let mut brackets = LambdaBracketTable::new();
        for (&(i, j, t), p) in self.brackets.iter() {
            brackets.set(i, j, t, p.map_coeffs(spec)?);
        }
        let conformal = match &self.conformal {
            ConformalVector::Generator(g) => ConformalVector::Generator(*g),
            ConformalVector::Composite(p) => ConformalVector::Composite(p.map_coeffs(spec)?),
        };
        let central_charge = self.central_charge.as_ref().map(spec).transpose()?;
        Ok(AlgebraPresentation {
            name: format!("{} @ k={k0}", self.name),
            generators: self.generators.clone(),
            brackets,
            conformal,
            central_charge,
            minimal_w: self.minimal_w.clone(),
        })
    }
}
