use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use super::gauss::GaussRat;
use super::rat::Rat;
use super::ScalarError;

/// Element of ½ℤ stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn from_rat(r: &Rat) -> Result<Self, ScalarError> {
        r.to_twice_i64()
            .map(HalfInt::from_twice)
            .ok_or_else(|| ScalarError::InvalidWeight(r.to_string()))
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_rat(self) -> Rat {
        Rat::half(self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HalfInt::from_rat(&s.parse::<Rat>()?)
    }
}

/// Fourth root of unity `(−i)^q` stored as `q mod 4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase {
    quarter_turns: u8,
}

impl Phase {
    pub const ONE: Phase = Phase { quarter_turns: 0 };
    pub const MINUS_I: Phase = Phase { quarter_turns: 1 };
    pub const MINUS_ONE: Phase = Phase { quarter_turns: 2 };
    pub const I: Phase = Phase { quarter_turns: 3 };

    pub fn from_quarter_turns(q: i64) -> Self {
        Phase { quarter_turns: q.rem_euclid(4) as u8 }
    }

    pub fn quarter_turns(self) -> u8 {
        self.quarter_turns
    }

    pub fn inverse(self) -> Phase {
        Phase::from_quarter_turns(-(self.quarter_turns as i64))
    }

    /// Complex conjugate; equal to the inverse on the unit circle.
    pub fn conj(self) -> Phase {
        self.inverse()
    }

    pub fn pow(self, n: i64) -> Phase {
        Phase::from_quarter_turns(self.quarter_turns as i64 * n)
    }

    pub fn to_gauss(self) -> GaussRat {
        match self.quarter_turns {
            0 => GaussRat::one(),
            1 => -GaussRat::i(),
            2 => GaussRat::from_int(-1),
            _ => GaussRat::i(),
        }
    }

    pub fn from_sign(negative: bool) -> Phase {
        if negative {
            Phase::MINUS_ONE
        } else {
            Phase::ONE
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    // powers of i multiply by adding quarter turns
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_quarter_turns(self.quarter_turns as i64 + rhs.quarter_turns as i64)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.quarter_turns {
            0 => "1",
            1 => "-i",
            2 => "-1",
            _ => "i",
        })
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `e^{−π i (Δ + p/2)} = (−i)^{2Δ+p}` for a conformal weight `delta` and parity.
pub fn phase_of(delta: &Rat, parity: u8) -> Result<Phase, ScalarError> {
    let twice = delta
        .to_twice_i64()
        .filter(|&t| t >= 0)
        .ok_or_else(|| ScalarError::InvalidWeight(delta.to_string()))?;
    if parity > 1 {
        return Err(ScalarError::InvalidParity(parity));
    }
    Ok(phase_of_twice(twice, parity))
}

/// Same as [`phase_of`] with the weight given in half units.
pub fn phase_of_twice(twice_delta: i64, parity: u8) -> Phase {
    Phase::from_quarter_turns(twice_delta + parity as i64)
}
