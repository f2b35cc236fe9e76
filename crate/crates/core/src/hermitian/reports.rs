use crate::engine::{basis, State};
use crate::presentation::{AlgebraPresentation, GenId};
use crate::scalar::{linalg, HalfInt, Rat, Scalar};

use super::form::Hermitian;
use super::signature::{signature, signature_of, SignatureReport};
use super::HermitianError;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightSignature {
    pub weight: HalfInt,
    pub signature: SignatureReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    PositiveDefinite,
    /// No negative directions; the first weight with a radical.
    PositiveSemidefinite { first_kernel: HalfInt },
    /// The first weight with a negative direction.
    Indefinite { first_negative: HalfInt },
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::PositiveDefinite => write!(f, "positive definite"),
            Verdict::PositiveSemidefinite { first_kernel } => {
                write!(f, "positive semidefinite with kernel (first at weight {first_kernel})")
            }
            Verdict::Indefinite { first_negative } => write!(f, "indefinite (first at weight {first_negative})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitarityReport {
    pub level: Option<Rat>,
    pub weights: Vec<WeightSignature>,
    pub verdict: Verdict,
}

/// The form evaluated at `k0` (or as is, for level-independent presentations).
pub fn form_at_level(p: &AlgebraPresentation, k0: Option<&Rat>) -> Result<Hermitian, HermitianError> {
    match k0 {
        Some(k0) => Hermitian::new(&p.at_level(k0)?),
        None if p.depends_on_level() => {
            Err(HermitianError::Precondition(format!("{} depends on k; supply a level", p.name)))
        }
        None => Hermitian::new(p),
    }
}

fn weights_up_to(max_w: HalfInt) -> impl Iterator<Item = HalfInt> {
    (0..=max_w.twice()).map(HalfInt::from_twice)
}

/// Signature at every nonempty weight `≤ max_w` and an overall verdict.
pub fn unitarity_report(p: &AlgebraPresentation, max_w: HalfInt, k0: Option<&Rat>) -> Result<UnitarityReport, HermitianError> {
    let form = form_at_level(p, k0)?;
    let mut weights = Vec::new();
    let mut first_kernel = None;
    let mut first_negative = None;
    for w in weights_up_to(max_w) {
        let g = form.gram(w);
        if g.dim() == 0 {
            continue;
        }
        let sig = signature(&g, &Rat::zero())?;
        if sig.n_minus > 0 && first_negative.is_none() {
            first_negative = Some(w);
        }
        if sig.n_zero > 0 && first_kernel.is_none() {
            first_kernel = Some(w);
        }
        weights.push(WeightSignature { weight: w, signature: sig });
    }
    let verdict = match (first_negative, first_kernel) {
        (Some(w), _) => Verdict::Indefinite { first_negative: w },
        (None, Some(w)) => Verdict::PositiveSemidefinite { first_kernel: w },
        (None, None) => Verdict::PositiveDefinite,
    };
    Ok(UnitarityReport { level: k0.cloned(), weights, verdict })
}

/// A kernel state whose image under a mode leaves the kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelViolation {
    pub weight: HalfInt,
    pub generator: GenId,
    pub mode: HalfInt,
    pub state: State,
    pub image: State,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelFlowReport {
    pub level: Option<Rat>,
    pub kernels: Vec<(HalfInt, Vec<State>)>,
    /// Number of (kernel state, mode) images examined.
    pub checked: usize,
    pub violations: Vec<KernelViolation>,
}

impl KernelFlowReport {
    pub fn is_closed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that generator modes map the radical at each weight `≤ max_w` into
/// the radical at the target weight.
pub fn kernel_flow(p: &AlgebraPresentation, max_w: HalfInt, k0: Option<&Rat>) -> Result<KernelFlowReport, HermitianError> {
    let form = form_at_level(p, k0)?;
    let mut kernels = Vec::new();
    for w in weights_up_to(max_w) {
        let g = form.gram(w);
        if g.dim() == 0 {
            continue;
        }
        let sig = signature(&g, &Rat::zero())?;
        if !sig.kernel_basis.is_empty() {
            kernels.push((w, sig.kernel_basis));
        }
    }
    let gens = &form.presentation().generators;
    let mut checked = 0;
    let mut violations = Vec::new();
    for (w, states) in &kernels {
        for (x, g) in gens.iter().enumerate() {
            let d2 = g.delta.twice();
            for n2 in (w.twice() - max_w.twice())..=w.twice() {
                if (n2 + d2).rem_euclid(2) != 0 {
                    continue;
                }
                let mode = HalfInt::from_twice(n2);
                let target = basis(form.presentation(), HalfInt::from_twice(w.twice() - n2));
                for s in states {
                    let image = form.engine().apply_mode(x, mode, s)?;
                    checked += 1;
                    if image.is_zero() {
                        continue;
                    }
                    if target.iter().any(|b| !form.pair_monomial(b, &image).is_zero()) {
                        violations.push(KernelViolation { weight: *w, generator: x, mode, state: s.clone(), image });
                    }
                }
            }
        }
    }
    Ok(KernelFlowReport { level: k0.cloned(), kernels, checked, violations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateEvidence {
    pub weight: HalfInt,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsingCandidate {
    pub level: Rat,
    pub evidence: Vec<CandidateEvidence>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollapsingReport {
    pub candidates: Vec<CollapsingCandidate>,
    /// Weights whose Gram determinant vanishes identically in `k`.
    pub degenerate_weights: Vec<HalfInt>,
    pub determinants: Vec<(HalfInt, Scalar)>,
}

/// Levels at which some Gram determinant of weight `≤ max_w` vanishes,
/// excluding poles of the presentation.
pub fn collapsing_candidates(p: &AlgebraPresentation, max_w: HalfInt) -> Result<CollapsingReport, HermitianError> {
    let mut report = CollapsingReport { candidates: Vec::new(), degenerate_weights: Vec::new(), determinants: Vec::new() };
    if !p.depends_on_level() {
        return Ok(report);
    }
    let poles = p.poles();
    let form = Hermitian::new(p)?;
    let mut grams = Vec::new();
    for w in weights_up_to(max_w) {
        let g = form.gram(w);
        if g.dim() == 0 {
            continue;
        }
        let det = linalg::determinant(&g.entries);
        if det.is_zero() {
            report.degenerate_weights.push(w);
        } else if !det.numer().is_constant() {
            for r in det.numer().rational_roots()? {
                if poles.contains(&r) {
                    continue;
                }
                match report.candidates.iter_mut().find(|c| c.level == r) {
                    Some(_) => {}
                    None => report.candidates.push(CollapsingCandidate { level: r, evidence: Vec::new() }),
                }
            }
        }
        report.determinants.push((w, det));
        grams.push(g);
    }
    for c in &mut report.candidates {
        for g in &grams {
            let Ok(h) = g.specialize(&c.level) else { continue };
            let sig = signature_of(&g.basis, &h);
            if sig.n_zero > 0 {
                c.evidence.push(CandidateEvidence { weight: g.weight, kernel_dim: sig.n_zero });
            }
        }
    }
    report.candidates.sort_by(|a, b| a.level.cmp(&b.level));
    Ok(report)
}
