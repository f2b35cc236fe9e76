//! Residues of `z^m w^n (z+w)^k` expanded in either domain.

use crate::scalar::Rat;

use super::EngineError;

/// `coeff · w^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPower {
    pub coeff: Rat,
    pub power: Rat,
}

fn integer(r: &Rat) -> Option<i64> {
    r.is_integer().then(|| r.to_i64()).flatten()
}

/// `Res_z z^m w^n i_{z,w}(z+w)^k`, expanding `Σ_j C(k,j) z^{m+k−j} w^{n+j}`.
pub fn res_zw(m: &Rat, n: &Rat, k: &Rat) -> Option<WPower> {
    let j = integer(&(&(m + k) + &Rat::one()))?;
    let power = n + &Rat::from_int(j);
    let coeff = if j < 0 { Rat::zero() } else { Rat::binomial(k, j as u64) };
    Some(WPower { coeff, power })
}

/// `Res_z z^m w^n i_{w,z}(z+w)^k`, expanding `Σ_j C(k,j) z^{m+j} w^{n+k−j}`.
pub fn res_wz(m: &Rat, n: &Rat, k: &Rat) -> Option<WPower> {
    let j = integer(&(-&(m + &Rat::one())))?;
    let power = &(n + k) - &Rat::from_int(j);
    let coeff = if j < 0 { Rat::zero() } else { Rat::binomial(k, j as u64) };
    Some(WPower { coeff, power })
}

/// Both sides of
/// `Res_z z^M w^N i_{z,w}(z+w)^K = (−1)^{K+M−1} Res_z z^{−2−K−M} w^{2+2K+M+N} i_{w,z}(z+w)^M`
/// for `M + K ∈ ℤ`.
pub fn residue_identity(m: &Rat, n: &Rat, k: &Rat) -> Result<(WPower, WPower), EngineError> {
    let mk = integer(&(m + k)).ok_or_else(|| EngineError::Precondition(format!("M + K = {} is not an integer", m + k)))?;
    let lhs = res_zw(m, n, k).expect("integral exponent");
    let two = Rat::from_int(2);
    let m2 = &(&-&two - k) - m;
    let n2 = &(&(&two + &(&two * k)) + m) + n;
    let mut rhs = res_wz(&m2, &n2, m).expect("integral exponent");
    if (mk - 1).rem_euclid(2) == 1 {
        rhs.coeff = -rhs.coeff;
    }
    Ok((lhs, rhs))
}
