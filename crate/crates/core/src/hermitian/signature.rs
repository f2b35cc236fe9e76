//! Exact signature of Hermitian matrices over ℚ(i) by congruence.

use serde::Serialize;

use crate::engine::{Monomial, State};
use crate::scalar::{GaussRat, Rat, Scalar};

use super::form::GramMatrix;
use super::HermitianError;

/// Inertia of a Hermitian form on one weight space.
#[derive(Clone, Debug, PartialEq)]
pub struct SignatureReport {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
    /// A basis of the radical.
    pub kernel_basis: Vec<State>,
}

impl SignatureReport {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n_zero == 0 && self.n_minus == 0
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.n_minus == 0
    }
}

/// JSON shape of a signature: `{n_plus, n_zero, n_minus, kernel}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SignatureRecord {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
    pub kernel: Vec<String>,
}

/// Inertia `(n₊, n₀, n₋)` and radical of a Hermitian matrix, with the radical
/// given as coordinate vectors.
pub fn hermitian_inertia(h: &[Vec<GaussRat>]) -> (usize, usize, usize, Vec<Vec<GaussRat>>) {
    let n = h.len();
    let mut a: Vec<Vec<GaussRat>> = h.to_vec();
    // rows of `e` express the current basis in the original one
    let mut e: Vec<Vec<GaussRat>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { GaussRat::one() } else { GaussRat::zero() }).collect()).collect();
    let mut active: Vec<bool> = vec![true; n];
    let (mut plus, mut minus) = (0, 0);

    // e_dst += t · e_src, applied as a congruence.
    let add = |a: &mut Vec<Vec<GaussRat>>, e: &mut Vec<Vec<GaussRat>>, dst: usize, src: usize, t: &GaussRat| {
        let tc = t.conj();
        for c in 0..n {
            let v = &a[dst][c] + &(&tc * &a[src][c]);
            a[dst][c] = v;
        }
        for r in 0..n {
            let v = &a[r][dst] + &(t * &a[r][src]);
            a[r][dst] = v;
        }
        for c in 0..n {
            let v = &e[dst][c] + &(t * &e[src][c]);
            e[dst][c] = v;
        }
    };

    loop {
        let live: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
        if live.is_empty() {
            break;
        }
        let pivot = live.iter().copied().find(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(i) => i,
            None => {
                // all diagonal entries vanish: look for a nonzero pairing
                let pair = live.iter().flat_map(|&i| live.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // (e_i + t e_j, e_i + t e_j) = 2 Re(t · a_ij)
                let t = if a[i][j].re.is_zero() { GaussRat::i() } else { GaussRat::one() };
                add(&mut a, &mut e, i, j, &t);
                i
            }
        };
        let d = a[pivot][pivot].clone();
        debug_assert!(d.im.is_zero(), "Hermitian diagonal must be real");
        for &j in &live {
            if j == pivot || a[j][pivot].is_zero() {
                continue;
            }
            // e_j −= (a_{pivot,j} / d) e_pivot makes (e_j, e_pivot) vanish
            let t = -(&a[pivot][j] / &d);
            add(&mut a, &mut e, j, pivot, &t);
        }
        if d.re.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        active[pivot] = false;
    }
    let kernel: Vec<Vec<GaussRat>> = (0..n).filter(|&i| active[i]).map(|i| e[i].clone()).collect();
    (plus, kernel.len(), minus, kernel)
}

fn coords_to_state(basis: &[Monomial], v: &[GaussRat]) -> State {
    basis.iter().zip(v).map(|(m, c)| (m.clone(), Scalar::from_gauss(c.clone()))).collect()
}

/// Signature of a Gram matrix at a real rational level.
pub fn signature(g: &GramMatrix, k0: &Rat) -> Result<SignatureReport, HermitianError> {
    let h = g.specialize(k0)?;
    Ok(signature_of(&g.basis, &h))
}

pub fn signature_of(basis: &[Monomial], h: &[Vec<GaussRat>]) -> SignatureReport {
    let (n_plus, n_zero, n_minus, kernel) = hermitian_inertia(h);
    SignatureReport { n_plus, n_zero, n_minus, kernel_basis: kernel.iter().map(|v| coords_to_state(basis, v)).collect() }
}
