use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use super::gauss::GaussRat;
use super::parse;
use super::poly::Poly;
use super::rat::Rat;
use super::ScalarError;

/// Element of ℚ(i)(k): a rational function in the level `k` with Gaussian
/// rational coefficients. The denominator is monic and coprime to the
/// numerator, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(GaussRat::one())
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    /// The level indeterminate.
    pub fn k() -> Self {
        Scalar { num: Poly::k(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::from_gauss(GaussRat::real(r))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::from_rat(Rat::frac(n, d))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Scalar { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    /// `num / den` reduced to canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let inv = den.constant_term().recip().expect("nonzero denominator");
            return Scalar { num: num.scale(&inv), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip().expect("nonzero");
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value does not depend on `k`.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// The value as a Gaussian rational when it does not depend on `k`.
    pub fn as_constant(&self) -> Option<GaussRat> {
        self.is_constant().then(|| self.num.constant_term())
    }

    /// Conjugation of coefficients; the level is treated as real.
    pub fn conj(&self) -> Scalar {
        Scalar { num: self.num.conj(), den: self.den.conj() }
    }

    pub fn scale(&self, c: &GaussRat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn scale_rat(&self, r: &Rat) -> Scalar {
        self.scale(&GaussRat::real(r.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, exp: i32) -> Result<Scalar, ScalarError> {
        if exp < 0 {
            return self.recip()?.pow(-exp);
        }
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Evaluate at the level `k0`.
    pub fn specialize(&self, k0: &Rat) -> Result<GaussRat, ScalarError> {
        let d = self.den.eval_rat(k0);
        if d.is_zero() {
            return Err(ScalarError::Pole { at: k0.clone(), factor: pole_factor(&self.den, k0) });
        }
        Ok(&self.num.eval_rat(k0) / &d)
    }

    /// Evaluate at `k0`, returning the result as a constant scalar.
    pub fn specialize_scalar(&self, k0: &Rat) -> Result<Scalar, ScalarError> {
        self.specialize(k0).map(Scalar::from_gauss)
    }
}

/// Human-readable name of the denominator factor that vanishes at `k0`.
fn pole_factor(den: &Poly, k0: &Rat) -> String {
    let linear = Poly::from_rats(&[-k0, Rat::one()]);
    let (_, r) = den.div_rem(&linear);
    debug_assert!(r.is_zero());
    linear.to_string()
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num + &rhs.num, den: Poly::one() };
        }
        if self.den == rhs.den {
            return Scalar::normalize(&self.num + &rhs.num, self.den.clone());
        }
        Scalar::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num * &rhs.num, den: Poly::one() };
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        Scalar::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("Scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::from_rat(r)
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::from_gauss(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

fn is_single_term(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

impl fmt::Display for Scalar {
    /// `num` when the denominator is 1, otherwise `num/(den)`; the numerator
    /// is parenthesised when it has more than one term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if is_single_term(&self.num) {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        write!(f, "/({})", self.den)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Parses arithmetic expressions over rationals, `i` and `k` with
    /// `+ - * / ^` and parentheses; the canonical serialization is a subset.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_scalar(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(Scalar::from_int(n)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn canonical_form_cancels() {
        let a = s("(k^2-1)/(2*k+2)");
        assert_eq!(a, s("k/2-1/2"));
        assert!(a.denom().is_one());
        let b = s("1/(2*k+4)");
        assert_eq!(b.to_string(), "1/2/(1*k^1+2)");
        assert_eq!(s(&b.to_string()), b);
    }

    #[test]
    fn specialize_examples() {
        assert_eq!(Scalar::k().specialize(&Rat::one()).unwrap(), GaussRat::one());
        assert!(matches!(
            s("1/(k+2)").specialize(&Rat::from_int(-2)),
            Err(ScalarError::Pole { .. })
        ));
        assert_eq!(
            s("2*k*(k-1)").specialize(&Rat::frac(1, 2)).unwrap(),
            GaussRat::real(Rat::frac(-1, 2))
        );
    }

    #[test]
    fn display_round_trip() {
        for text in ["0", "1", "-3/4", "i", "(1+2*i)*k^2-k/3+1/5", "(k+i)/(k^2+1)", "k^-1"] {
            let v = s(text);
            assert_eq!(s(&v.to_string()), v, "{text} -> {v}");
        }
        assert_eq!(s("k^2-1").to_string(), "1*k^2+-1");
        assert_eq!(s("i*k").to_string(), "(0+1*i)*k^1");
    }

    #[test]
    fn conj_fixes_level() {
        let a = s("(1+2*i)*k+3");
        assert_eq!(a.conj(), s("(1-2*i)*k+3"));
        assert_eq!(Scalar::k().conj(), Scalar::k());
    }
}
