use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gauss::GaussRat;
use super::rat::Rat;
use super::ScalarError;

/// Dense univariate polynomial in the level `k` over ℚ(i); `coeffs[d]` is the
/// coefficient of `k^d`. No trailing zeros are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `k`.
    pub fn k() -> Self {
        Poly::from_coeffs(vec![GaussRat::zero(), GaussRat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(GaussRat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_rats(coeffs: &[Rat]) -> Self {
        Poly::from_coeffs(coeffs.iter().cloned().map(GaussRat::real).collect())
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&GaussRat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn conj(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(GaussRat::conj).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> GaussRat {
        let mut re = Rat::zero();
        let mut im = Rat::zero();
        for c in self.coeffs.iter().rev() {
            re = &(&re * x) + &c.re;
            im = &(&im * x) + &c.im;
        }
        GaussRat::new(re, im)
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c.scale(&Rat::from_int(d as i64)))
                .collect(),
        )
    }

    /// Real and imaginary parts as polynomials over ℚ.
    pub fn split_re_im(&self) -> (Poly, Poly) {
        (
            Poly::from_coeffs(self.coeffs.iter().map(|c| GaussRat::real(c.re.clone())).collect()),
            Poly::from_coeffs(self.coeffs.iter().map(|c| GaussRat::real(c.im.clone())).collect()),
        )
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        if divisor.is_constant() {
            let inv = divisor.coeffs[0].recip().expect("nonzero");
            return (self.scale(&inv), Poly::zero());
        }
        let lead_inv = divisor.coeffs[dd].recip().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![GaussRat::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let c = &rem[shift + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * dc);
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_constant() && !a.is_zero() || b.is_constant() && !b.is_zero() {
            return Poly::one();
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    /// Square-free part (monic); the multiplicity of every root becomes one.
    pub fn square_free(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.div_exact(&g).monic()
    }

    /// Rational roots, sorted ascending and without repetition.
    ///
    /// A rational root of a polynomial with ℚ(i) coefficients annihilates the
    /// real and imaginary parts separately, so the search runs on their gcd
    /// over ℚ, scaled to a primitive integer polynomial and filtered through the
    /// rational-root theorem. Every candidate is verified by exact evaluation.
    pub fn rational_roots(&self) -> Result<Vec<Rat>, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroPolynomial);
        }
        let (re, im) = self.split_re_im();
        let real_part = Poly::gcd(&re, &im);
        if real_part.is_constant() {
            return Ok(Vec::new());
        }
        let sf = real_part.square_free();
        let mut ints = integer_coefficients(&sf);
        let mut roots = Vec::new();
        // Strip the factor k^m.
        if ints[0].is_zero() {
            roots.push(Rat::zero());
            let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
            ints.drain(..lead_zeros);
        }
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().expect("nonempty").abs();
            let numerators = divisors(&a0)?;
            let denominators = divisors(&an)?;
            for q in &denominators {
                for p in &numerators {
                    if !p.gcd(q).is_one() {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let cand = Rat::from_big(p.clone() * BigInt::from(sign), q.clone())?;
                        if self.eval_rat(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

/// Primitive integer polynomial proportional to a polynomial with real rational
/// coefficients.
fn integer_coefficients(p: &Poly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.re.denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c.re.numer() * &lcm) / c.re.denom())
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    ints
}

const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, ScalarError> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.abs();
    let mut d = BigInt::from(2u32);
    let mut steps = 0u64;
    while &d * &d <= rest {
        if (&rest % &d).is_zero() {
            let mut e = 0;
            while (&rest % &d).is_zero() {
                rest /= &d;
                e += 1;
            }
            factors.push((d.clone(), e));
        }
        d += 1u32;
        steps += 1;
        if steps > TRIAL_DIVISION_LIMIT {
            return Err(ScalarError::CoefficientsTooLarge);
        }
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = GaussRat::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = rhs.coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        let mut out = vec![GaussRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn fmt_coeff(c: &GaussRat) -> String {
    if c.is_real() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for Poly {
    /// Sparse form `c_d*k^d+...+c_0`, terms in decreasing degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if d == 0 {
                write!(f, "{}", fmt_coeff(c))?;
            } else {
                write!(f, "{}*k^{d}", fmt_coeff(c))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
