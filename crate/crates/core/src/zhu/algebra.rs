use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::presentation::{AlgebraPresentation, LinComb, MinimalWDatum, ValidationIssue};
use crate::scalar::{GaussRat, Scalar};

use super::ZhuError;

/// A word in the generators, compared by length and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZhuWord(pub Vec<usize>);

impl ZhuWord {
    pub fn empty() -> Self {
        ZhuWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl Ord for ZhuWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ZhuWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear combination of PBW words with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZhuElement {
    terms: BTreeMap<ZhuWord, Scalar>,
}

impl ZhuElement {
    pub fn zero() -> Self {
        ZhuElement::default()
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut e = ZhuElement::zero();
        e.add_term(ZhuWord::empty(), c);
        e
    }

    pub fn one() -> Self {
        ZhuElement::scalar(Scalar::one())
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

    pub fn iter(&self) -> impl Iterator<Item = (&ZhuWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &ZhuWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Highest word length, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(ZhuWord::degree).max()
    }

    fn add_term(&mut self, w: ZhuWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &ZhuElement) -> ZhuElement {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZhuElement) -> ZhuElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> ZhuElement {
        let mut out = ZhuElement::zero();
        for (w, d) in self.iter() {
            out.add_term(w.clone(), d * c);
        }
        out
    }

    /// True when every coefficient is independent of `k`.
    pub fn is_level_independent(&self) -> bool {
        self.terms.values().all(Scalar::is_constant)
    }
}

/// How the central generator of weight 2 is normalised.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralGenerator {
    /// `L′ = 2(k+h^∨)L + ½p(k)`, in which the relations are level-free.
    Shifted,
    /// The image of the conformal vector itself.
    Virasoro,
}

/// The Zhu algebra of a minimal W-algebra, presented by generators
/// `u_i ∈ g_{−1/2}`, `a_j ∈ g^♮` and a central element, ordered in that way.
#[derive(Clone, Debug, PartialEq)]
pub struct ZhuPresentation {
    datum: MinimalWDatum,
    central: CentralGenerator,
    names: Vec<String>,
    parities: Vec<u8>,
    /// `[x, y]` for every ordered pair with a nonzero bracket.
    brackets: BTreeMap<(usize, usize), ZhuElement>,
    omega_images: Vec<ZhuElement>,
}

fn gauss(c: &GaussRat) -> Scalar {
    Scalar::from_gauss(c.clone())
}

fn sign(negative: bool) -> Scalar {
    Scalar::from_int(if negative { -1 } else { 1 })
}

impl ZhuPresentation {
    /// The presentation in terms of `L′`.
    pub fn new(datum: &MinimalWDatum) -> Result<ZhuPresentation, ZhuError> {
        ZhuPresentation::build(datum, CentralGenerator::Shifted)
    }

    /// The presentation in terms of `L`, whose `[u, v]` relation depends on `k`.
    pub fn with_virasoro(datum: &MinimalWDatum) -> Result<ZhuPresentation, ZhuError> {
        ZhuPresentation::build(datum, CentralGenerator::Virasoro)
    }

    pub fn from_presentation(p: &AlgebraPresentation) -> Result<ZhuPresentation, ZhuError> {
        let d = p.minimal_w.as_ref().ok_or_else(|| ZhuError::NotMinimalW(p.name.clone()))?;
        ZhuPresentation::new(d)
    }

    fn build(datum: &MinimalWDatum, central: CentralGenerator) -> Result<ZhuPresentation, ZhuError> {
        let mut issues: Vec<ValidationIssue> = Vec::new();
        datum.validate(&mut issues);
        if !issues.is_empty() {
            return Err(ZhuError::Invalid(issues));
        }
        let (nu, na) = (datum.n_ghalf(), datum.n_gnat());
        let mut names: Vec<String> = datum.ghalf_names.clone();
        names.extend(datum.gnat.space.names.iter().cloned());
        names.push(match central {
            CentralGenerator::Shifted => "L'".into(),
            CentralGenerator::Virasoro => "L".into(),
        });
        let mut parities = datum.ghalf_parities.clone();
        parities.extend(datum.gnat.space.parities.iter().copied());
        parities.push(0);

        let mut zp = ZhuPresentation {
            datum: datum.clone(),
            central,
            names,
            parities,
            brackets: BTreeMap::new(),
            omega_images: Vec::new(),
        };
        let a = |j: usize| nu + j;
        let lin_a = |lc: &LinComb| -> ZhuElement {
            let mut e = ZhuElement::zero();
            for (j, c) in lc.terms() {
                e.add_term(ZhuWord(vec![a(*j)]), gauss(c));
            }
            e
        };
        let lin_u = |lc: &LinComb| -> ZhuElement {
            let mut e = ZhuElement::zero();
            for (i, c) in lc.terms() {
                e.add_term(ZhuWord(vec![*i]), gauss(c));
            }
            e
        };

        // [a, b] = [a, b]_g
        for i in 0..na {
            for j in 0..na {
                zp.set_bracket(a(i), a(j), lin_a(&datum.gnat.bracket_basis(i, j)));
            }
        }
        // [a, v] = [a, v]_g and [v, a] = −p(v, a)[a, v]
        for j in 0..na {
            for i in 0..nu {
                let av = lin_u(&datum.act(&LinComb::basis(j), &LinComb::basis(i)));
                let s = sign(zp.parities[i] * zp.parities[a(j)] == 1);
                zp.set_bracket(i, a(j), av.scale(&-s));
                zp.set_bracket(a(j), i, av);
            }
        }
        // [u, v]
        for i in 0..nu {
            for j in 0..nu {
                let r = zp.uv_relation(i, j);
                zp.set_bracket(i, j, r);
            }
        }
        zp.omega_images = (0..zp.len()).map(|x| zp.omega_generator(x)).collect();
        Ok(zp)
    }

    fn set_bracket(&mut self, x: usize, y: usize, v: ZhuElement) {
        if v.is_zero() {
            self.brackets.remove(&(x, y));
        } else {
            self.brackets.insert((x, y), v);
        }
    }

    /// Right side of the `[u, v]` relation in the chosen normalisation.
    fn uv_relation(&self, u: usize, v: usize) -> ZhuElement {
        let d = &self.datum;
        let nu = d.n_ghalf();
        let na = d.n_gnat();
        let dual = d.dual_basis();
        let c = self.central_index();
        let uv = gauss(&d.pair(&LinComb::basis(u), &LinComb::basis(v)));
        let a = |j: usize| nu + j;
        // Σ_α a^α * a_α
        let mut casimir = ZhuElement::zero();
        for (alpha, lc) in dual.iter().enumerate() {
            for (l, m) in lc.terms() {
                casimir.add_term(ZhuWord(vec![a(*l), a(alpha)]), gauss(m));
            }
        }
        // Σ_{α,β} ⟨[a_α, u], [v, a^β]⟩ (a^α * a_β + p(a_α, a_β) a_β * a^α)
        let mp = d.mixed_pairing(u, v);
        let mut quad = ZhuElement::zero();
        for (alpha, row) in mp.iter().enumerate().take(na) {
            for (beta, m) in row.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let m = gauss(m);
                let p = sign(self.parities[a(alpha)] * self.parities[a(beta)] == 1);
                for (l, x) in dual[alpha].terms() {
                    let cx = &m * &gauss(x);
                    quad.add_term(ZhuWord(vec![a(*l), a(beta)]), cx.clone());
                    quad.add_term(ZhuWord(vec![a(beta), a(*l)]), &cx * &p);
                }
            }
        }
        match self.central {
            CentralGenerator::Shifted => {
                let mut inner = casimir;
                inner.add_term(ZhuWord(vec![c]), -Scalar::one());
                inner.scale(&uv).add(&quad)
            }
            CentralGenerator::Virasoro => {
                // Σ_α [a^α, a_α]_g vanishes, but the relation is kept as written:
                // ⟨u,v⟩(Σ(a^α a_α − [a^α, a_α]) − 2(k+h^∨)L − ½p(k))
                //   + Σ ⟨[a_α,u],[v,a^β]⟩ (2 a^α a_β − [a^α, a_β])
                let mut inner = casimir;
                for (alpha, lc) in dual.iter().enumerate() {
                    let br = d.gnat.bracket_of(lc, &LinComb::basis(alpha));
                    for (j, x) in br.terms() {
                        inner.add_term(ZhuWord(vec![a(*j)]), -gauss(x));
                    }
                }
                let kh = &Scalar::k() + &Scalar::from_rat(d.h_dual.clone());
                inner.add_term(ZhuWord(vec![c]), &Scalar::from_int(-2) * &kh);
                inner.add_term(ZhuWord::empty(), -(&d.p_scalar() * &Scalar::frac(1, 2)));
                let mut rest = ZhuElement::zero();
                for (alpha, row) in mp.iter().enumerate().take(na) {
                    for (beta, m) in row.iter().enumerate() {
                        if m.is_zero() {
                            continue;
                        }
                        let m = gauss(m);
                        for (l, x) in dual[alpha].terms() {
                            let cx = &m * &gauss(x);
                            rest.add_term(ZhuWord(vec![a(*l), a(beta)]), &cx * &Scalar::from_int(2));
                            let br = d.gnat.bracket_basis(*l, beta);
                            for (j, y) in br.terms() {
                                rest.add_term(ZhuWord(vec![a(*j)]), -(&cx * &gauss(y)));
                            }
                        }
                    }
                }
                inner.scale(&uv).add(&rest)
            }
        }
    }

    fn omega_generator(&self, x: usize) -> ZhuElement {
        let d = &self.datum;
        let nu = d.n_ghalf();
        let p = self.parities[x] as i64;
        let i_pow = |n: i64| -> GaussRat {
            match n.rem_euclid(4) {
                0 => GaussRat::one(),
                1 => GaussRat::i(),
                2 => GaussRat::from_int(-1),
                _ => -GaussRat::i(),
            }
        };
        let mut e = ZhuElement::zero();
        if x == self.central_index() {
            return ZhuElement::generator(x);
        }
        if x < nu {
            // ω(v) = (−1)^{p(v)} i^{p(v)+1} φ(v)
            let c = i_pow(2 * p + p + 1);
            for (j, y) in d.ghalf_phi[x].terms() {
                e.add_term(ZhuWord(vec![*j]), gauss(&(&c * y)));
            }
        } else {
            // ω(a) = (−1)^{p(a)+1} i^{p(a)} φ(a)
            let c = i_pow(2 * (p + 1) + p);
            for (j, y) in d.gnat.space.phi[x - nu].terms() {
                e.add_term(ZhuWord(vec![nu + *j]), gauss(&(&c * y)));
            }
        }
        e
    }

    pub fn datum(&self) -> &MinimalWDatum {
        &self.datum
    }

    pub fn central(&self) -> CentralGenerator {
        self.central
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parity(&self, x: usize) -> u8 {
        self.parities[x]
    }

    pub fn central_index(&self) -> usize {
        self.names.len() - 1
    }

    /// All stored generator brackets `[x, y]`.
    pub fn bracket_table(&self) -> impl Iterator<Item = (&(usize, usize), &ZhuElement)> {
        self.brackets.iter()
    }

    pub fn generator_bracket(&self, x: usize, y: usize) -> ZhuElement {
        self.brackets.get(&(x, y)).cloned().unwrap_or_default()
    }

    /// `ω` on a generator.
    pub fn omega_image(&self, x: usize) -> &ZhuElement {
        &self.omega_images[x]
    }

    pub fn word_parity(&self, w: &ZhuWord) -> u8 {
        w.0.iter().map(|&x| self.parities[x]).sum::<u8>() % 2
    }

    /// Parity of a homogeneous element, `None` for mixed parity.
    pub fn parity_of(&self, x: &ZhuElement) -> Option<u8> {
        let mut ps = x.iter().map(|(w, _)| self.word_parity(w));
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }

    pub fn is_canonical(&self, w: &ZhuWord) -> bool {
        self.first_disorder(&w.0).is_none()
    }

    fn first_disorder(&self, w: &[usize]) -> Option<usize> {
        w.windows(2).position(|p| p[0] > p[1] || (p[0] == p[1] && self.parities[p[0]] == 1))
    }

    /// Reduce arbitrary words to PBW normal form.
    ///
    /// Each rewrite either lowers the number of `g_{−1/2}` letters, lowers the
    /// length, or removes an inversion, so the loop terminates.
    pub fn normalize(&self, raw: impl IntoIterator<Item = (ZhuWord, Scalar)>) -> ZhuElement {
        let mut pending: BTreeMap<ZhuWord, Scalar> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<ZhuWord, Scalar>, w: ZhuWord, c: Scalar| {
            if c.is_zero() {
                return;
            }
            let e = pending.entry(w.clone()).or_insert_with(Scalar::zero);
            *e += &c;
            if e.is_zero() {
                pending.remove(&w);
            }
        };
        for (w, c) in raw {
            push(&mut pending, w, c);
        }
        let mut out = ZhuElement::zero();
        while let Some((w, c)) = pending.pop_last() {
            let Some(i) = self.first_disorder(&w.0) else {
                out.add_term(w, c);
                continue;
            };
            let (x, y) = (w.0[i], w.0[i + 1]);
            let splice = |mid: &[usize]| -> ZhuWord {
                let mut v = w.0[..i].to_vec();
                v.extend_from_slice(mid);
                v.extend_from_slice(&w.0[i + 2..]);
                ZhuWord(v)
            };
            if x == y {
                // y * y = ½ [y, y] for odd y
                let half = &c * &Scalar::frac(1, 2);
                for (bw, bc) in self.generator_bracket(x, x).iter() {
                    push(&mut pending, splice(&bw.0), &half * bc);
                }
            } else {
                // x * y = p(x, y) y * x + [x, y]
                let p = sign(self.parities[x] * self.parities[y] == 1);
                push(&mut pending, splice(&[y, x]), &c * &p);
                for (bw, bc) in self.generator_bracket(x, y).iter() {
                    push(&mut pending, splice(&bw.0), &c * bc);
                }
            }
        }
        out
    }

    pub fn element(&self, w: ZhuWord) -> ZhuElement {
        self.normalize([(w, Scalar::one())])
    }

    /// The PBW normal form of `x * y`.
    pub fn multiply(&self, x: &ZhuElement, y: &ZhuElement) -> ZhuElement {
        let mut raw = Vec::with_capacity(x.len() * y.len());
        for (u, a) in x.iter() {
            for (v, b) in y.iter() {
                let mut w = u.0.clone();
                w.extend_from_slice(&v.0);
                raw.push((ZhuWord(w), a * b));
            }
        }
        self.normalize(raw)
    }

    /// Supercommutator `x*y − p(x,y) y*x` of homogeneous elements.
    pub fn bracket(&self, x: &ZhuElement, y: &ZhuElement) -> ZhuElement {
        let px = self.parity_of(x).unwrap_or(0);
        let py = self.parity_of(y).unwrap_or(0);
        let s = sign(px * py == 1);
        self.multiply(x, y).sub(&self.multiply(y, x).scale(&s))
    }

    /// The conjugate-linear anti-involution: generator images in reversed
    /// order with conjugated coefficients.
    pub fn omega(&self, x: &ZhuElement) -> ZhuElement {
        let mut out = ZhuElement::zero();
        for (w, c) in x.iter() {
            let mut acc = ZhuElement::scalar(c.conj());
            for &l in w.0.iter().rev() {
                acc = self.multiply(&acc, &self.omega_images[l]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// All PBW words of length `≤ d`, in canonical order.
    pub fn words_up_to(&self, d: usize) -> Vec<ZhuWord> {
        let mut out = vec![ZhuWord::empty()];
        let mut layer = vec![ZhuWord::empty()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in &layer {
                let start = w.0.last().copied().unwrap_or(0);
                for x in start..self.len() {
                    if w.0.last() == Some(&x) && self.parities[x] == 1 {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(x);
                    next.push(ZhuWord(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out
    }

    pub fn display<'a>(&'a self, x: &'a ZhuElement) -> impl fmt::Display + 'a {
        ZhuDisplay { zp: self, x }
    }

    pub fn word_string(&self, w: &ZhuWord) -> String {
        if w.0.is_empty() {
            return "1".into();
        }
        let c = self.central_index();
        let n_central = w.0.iter().filter(|&&l| l == c).count();
        let mut parts: Vec<String> = w.0.iter().filter(|&&l| l != c).map(|&l| self.names[l].clone()).collect();
        match n_central {
            0 => {}
            1 => parts.push(self.names[c].clone()),
            m => parts.push(format!("{}^{m}", self.names[c])),
        }
        parts.join("*")
    }

    /// Parse the line format written by [`ZhuPresentation::display`]. Words
    /// need not be canonical; the result is normalised.
    pub fn parse(&self, text: &str) -> Result<ZhuElement, ZhuError> {
        let mut raw = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line == "0" {
                continue;
            }
            let err = |m: String| ZhuError::Parse { line: n + 1, message: m };
            let (c, w) = line.split_once('·').ok_or_else(|| err("expected `coeff · word`".into()))?;
            let coeff: Scalar = c.trim().parse().map_err(|e: crate::scalar::ScalarError| err(e.to_string()))?;
            let w = w.trim();
            let mut letters = Vec::new();
            if w != "1" {
                for tok in w.split('*') {
                    let (name, exp) = match tok.rsplit_once('^') {
                        Some((nm, e)) => (nm, e.parse::<usize>().map_err(|_| err(format!("bad exponent in `{tok}`")))?),
                        None => (tok, 1),
                    };
                    let x = self
                        .names
                        .iter()
                        .position(|m| m == name)
                        .ok_or_else(|| err(format!("unknown generator `{name}`")))?;
                    letters.extend(std::iter::repeat_n(x, exp));
                }
            }
            raw.push((ZhuWord(letters), coeff));
        }
        Ok(self.normalize(raw))
    }
}

impl ZhuElement {
    pub fn generator(x: usize) -> ZhuElement {
        let mut e = ZhuElement::zero();
        e.add_term(ZhuWord(vec![x]), Scalar::one());
        e
    }
}

struct ZhuDisplay<'a> {
    zp: &'a ZhuPresentation,
    x: &'a ZhuElement,
}

impl fmt::Display for ZhuDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.x.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "{c} · {}", self.zp.word_string(w))?;
        }
        Ok(())
    }
}

/// Outcome of scanning the straightening rules for the level.
#[derive(Clone, Debug, PartialEq)]
pub struct KIndependenceReport {
    /// `(x, y, [x, y])` for every rule whose coefficients involve `k`.
    pub offending: Vec<(String, String, String)>,
}

impl KIndependenceReport {
    pub fn passed(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Scan every generator bracket and `ω` image for residual `k`-dependence.
pub fn k_independence_check(zp: &ZhuPresentation) -> KIndependenceReport {
    let mut offending = Vec::new();
    for (&(x, y), v) in zp.bracket_table() {
        if !v.is_level_independent() {
            offending.push((zp.names[x].clone(), zp.names[y].clone(), zp.display(v).to_string()));
        }
    }
    for (x, v) in zp.omega_images.iter().enumerate() {
        if !v.is_level_independent() {
            offending.push((zp.names[x].clone(), "ω".into(), zp.display(v).to_string()));
        }
    }
    KIndependenceReport { offending }
}

pub fn zhu_multiply(zp: &ZhuPresentation, x: &ZhuElement, y: &ZhuElement) -> ZhuElement {
    zp.multiply(x, y)
}

pub fn zhu_omega(zp: &ZhuPresentation, x: &ZhuElement) -> ZhuElement {
    zp.omega(x)
}

/// A generator triple on which the super-Jacobi identity fails.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub defect: ZhuElement,
}

/// Results of the structural checks on a Zhu presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct ZhuSuiteReport {
    /// `ω(x*y) ≠ p(x,y) ω(y)*ω(x)` for these word pairs.
    pub anti_hom_failures: Vec<(ZhuWord, ZhuWord)>,
    /// `ω(x*y) ≠ ω(y)*ω(x)` for these word pairs. The two conventions differ
    /// only on pairs of odd words.
    pub plain_anti_hom_failures: Vec<(ZhuWord, ZhuWord)>,
    /// `ω² ≠ id` on these words.
    pub omega_square_failures: Vec<ZhuWord>,
    /// Words that fail to commute with the central generator.
    pub centrality_failures: Vec<ZhuWord>,
    pub jacobi_failures: Vec<JacobiFailure>,
    /// `(x*y)*z ≠ x*(y*z)` for these generator triples.
    pub associativity_failures: Vec<(usize, usize, usize)>,
    pub k_independence: KIndependenceReport,
    pub checked_pairs: usize,
}

impl ZhuSuiteReport {
    pub fn passed(&self) -> bool {
        self.anti_hom_failures.is_empty()
            && self.omega_square_failures.is_empty()
            && self.centrality_failures.is_empty()
            && self.jacobi_failures.is_empty()
            && self.associativity_failures.is_empty()
            && self.k_independence.passed()
    }
}

/// Anti-homomorphism of `ω` on word pairs of length `≤ anti_degree`, `ω² = id`
/// and centrality on words of length `≤ square_degree`, super-Jacobi and
/// associativity on generator triples, and level independence.
pub fn zhu_suite(zp: &ZhuPresentation, anti_degree: usize, square_degree: usize) -> ZhuSuiteReport {
    let small = zp.words_up_to(anti_degree);
    let mut anti_hom_failures = Vec::new();
    let mut plain_anti_hom_failures = Vec::new();
    let mut checked_pairs = 0;
    for x in &small {
        for y in &small {
            let (ex, ey) = (zp.element(x.clone()), zp.element(y.clone()));
            let s = sign(zp.word_parity(x) * zp.word_parity(y) == 1);
            let lhs = zp.omega(&zp.multiply(&ex, &ey));
            let plain = zp.multiply(&zp.omega(&ey), &zp.omega(&ex));
            checked_pairs += 1;
            if lhs != plain.scale(&s) {
                anti_hom_failures.push((x.clone(), y.clone()));
            }
            if lhs != plain {
                plain_anti_hom_failures.push((x.clone(), y.clone()));
            }
        }
    }
    let c = ZhuElement::generator(zp.central_index());
    let mut omega_square_failures = Vec::new();
    let mut centrality_failures = Vec::new();
    for w in zp.words_up_to(square_degree) {
        let e = zp.element(w.clone());
        if zp.omega(&zp.omega(&e)) != e {
            omega_square_failures.push(w.clone());
        }
        if zp.multiply(&c, &e) != zp.multiply(&e, &c) {
            centrality_failures.push(w);
        }
    }
    let n = zp.len();
    let gens: Vec<ZhuElement> = (0..n).map(ZhuElement::generator).collect();
    let mut jacobi_failures = Vec::new();
    let mut associativity_failures = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (gx, gy, gz) = (&gens[x], &gens[y], &gens[z]);
                let pxy = sign(zp.parities[x] * zp.parities[y] == 1);
                let defect = zp
                    .bracket(gx, &zp.bracket(gy, gz))
                    .sub(&zp.bracket(&zp.bracket(gx, gy), gz))
                    .sub(&zp.bracket(gy, &zp.bracket(gx, gz)).scale(&pxy));
                if !defect.is_zero() {
                    jacobi_failures.push(JacobiFailure { triple: (x, y, z), defect });
                }
                let left = zp.multiply(&zp.multiply(gx, gy), gz);
                let right = zp.multiply(gx, &zp.multiply(gy, gz));
                if left != right {
                    associativity_failures.push((x, y, z));
                }
            }
        }
    }
    ZhuSuiteReport {
        anti_hom_failures,
        plain_anti_hom_failures,
        omega_square_failures,
        centrality_failures,
        jacobi_failures,
        associativity_failures,
        k_independence: k_independence_check(zp),
        checked_pairs,
    }
}
