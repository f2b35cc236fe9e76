//! Property suites behind `vform check`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use vform::engine::{basis, residue_identity, State};
use vform::hermitian::Hermitian;
use vform::presentation::AlgebraPresentation;
use vform::zhu::{zhu_suite, ZhuPresentation};
use vform::{HalfInt, Rat};

use crate::render;
use crate::{check_cap, CliError, Common, Format, Outcome, Suite};

/// Levels used when a level-dependent presentation is checked without `--level`.
fn default_levels() -> Vec<Rat> {
    vec![Rat::one(), Rat::frac(7, 2), Rat::frac(-1, 3)]
}

/// One suite's verdict; `witness` describes the first failure.
struct SuiteResult {
    suite: &'static str,
    cases: usize,
    witness: Option<String>,
}

impl SuiteResult {
    fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// The presentation specialized at each requested level, or itself if it
/// does not depend on `k`.
fn specializations(p: &AlgebraPresentation, levels: &[Rat]) -> Result<Vec<(String, AlgebraPresentation)>, CliError> {
    if !p.depends_on_level() {
        return Ok(vec![(p.name.clone(), p.clone())]);
    }
    let poles = p.poles();
    let levels = if levels.is_empty() { default_levels() } else { levels.to_vec() };
    let mut out = Vec::new();
    for k0 in levels {
        if poles.contains(&k0) {
            return Err(CliError::Input(format!("k = {k0} is a pole of {}", p.name)));
        }
        out.push((format!("{} at k = {k0}", p.name), p.at_level(&k0)?));
    }
    Ok(out)
}

fn states(p: &AlgebraPresentation, w2: i64) -> Vec<State> {
    basis(p, HalfInt::from_twice(w2)).into_iter().map(State::monomial).collect()
}

/// `(v, X_n u) = (g(X)_{−n} v, u)` for `|n| ≤ 2` and Gram matrices Hermitian,
/// on all basis vectors of weight `≤ max_w`.
fn invariance(p: &AlgebraPresentation, max_w: HalfInt, levels: &[Rat]) -> Result<SuiteResult, CliError> {
    let mut cases = 0;
    for (label, q) in specializations(p, levels)? {
        let f = Hermitian::new(&q)?;
        let top = max_w.twice();
        let bases: Vec<Vec<State>> = (0..=top).map(|w2| states(&q, w2)).collect();
        for w2 in 0..=top {
            cases += 1;
            let g = f.gram(HalfInt::from_twice(w2));
            if !g.is_hermitian() {
                let witness = format!("{label}: Gram matrix at weight {} is not Hermitian", g.weight);
                return Ok(SuiteResult { suite: "invariance", cases, witness: Some(witness) });
            }
        }
        for (x, gen) in q.generators.iter().enumerate() {
            for n2 in -4..=4i64 {
                if (n2 + gen.delta.twice()).rem_euclid(2) != 0 {
                    continue;
                }
                let n = HalfInt::from_twice(n2);
                for (wu, us) in bases.iter().enumerate() {
                    let wv = wu as i64 - n2;
                    if !(0..=top).contains(&wv) {
                        continue;
                    }
                    for u in us {
                        for v in &bases[wv as usize] {
                            cases += 1;
                            let c = f.check_invariance(x, n, u, v)?;
                            if !c.passed() {
                                let witness = format!(
                                    "{label}: X = {}_{n}, u = {}, v = {}: (v, X u) = {} but (g(X)^† v, u) = {}",
                                    gen.name,
                                    u.display(&q.generators),
                                    v.display(&q.generators),
                                    c.lhs,
                                    c.rhs
                                );
                                return Ok(SuiteResult { suite: "invariance", cases, witness: Some(witness) });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(SuiteResult { suite: "invariance", cases, witness: None })
}

/// Random `(M, N, K)` with `M + K ∈ ℤ` on a half-integer grid.
fn residue(seed: u64, samples: usize) -> Result<SuiteResult, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..samples {
        let k = Rat::half(rng.gen_range(-8..=8));
        let m = &Rat::from_int(rng.gen_range(-6..=6)) - &k;
        let n = Rat::half(rng.gen_range(-8..=8));
        let (lhs, rhs) = residue_identity(&m, &n, &k)?;
        if lhs != rhs {
            let witness = format!(
                "M = {m}, N = {n}, K = {k}: left side {}·w^{} but right side {}·w^{}",
                lhs.coeff, lhs.power, rhs.coeff, rhs.power
            );
            return Ok(SuiteResult { suite: "residue", cases: case + 1, witness: Some(witness) });
        }
    }
    Ok(SuiteResult { suite: "residue", cases: samples, witness: None })
}

fn zhu(p: &AlgebraPresentation) -> Result<SuiteResult, CliError> {
    let zp = ZhuPresentation::from_presentation(p)?;
    let r = zhu_suite(&zp, 2, 3);
    let word = |w: &vform::zhu::ZhuWord| zp.display(&zp.element(w.clone())).to_string();
    let witness = if let Some((x, y)) = r.anti_hom_failures.first() {
        Some(format!("ω(x*y) ≠ p(x,y) ω(y)*ω(x) for x = {}, y = {}", word(x), word(y)))
    } else if let Some(w) = r.omega_square_failures.first() {
        Some(format!("ω² ≠ id on {}", word(w)))
    } else if let Some(w) = r.centrality_failures.first() {
        Some(format!("{} does not commute with the central generator", word(w)))
    } else if let Some(j) = r.jacobi_failures.first() {
        let (a, b, c) = j.triple;
        let n = zp.names();
        Some(format!("super-Jacobi fails on ({}, {}, {}): defect {}", n[a], n[b], n[c], zp.display(&j.defect)))
    } else if let Some((a, b, c)) = r.associativity_failures.first() {
        let n = zp.names();
        Some(format!("associativity fails on ({}, {}, {})", n[*a], n[*b], n[*c]))
    } else {
        r.k_independence.offending.first().map(|(x, y, v)| format!("[{x}, {y}] = {v} depends on k"))
    };
    Ok(SuiteResult { suite: "zhu", cases: r.checked_pairs, witness })
}

fn borcherds(p: &AlgebraPresentation, max_w: HalfInt) -> Result<SuiteResult, CliError> {
    let f = Hermitian::new(p)?;
    let witness = f.engine().check_all_commutators(max_w)?.map(|fail| {
        let g = &p.generators;
        format!(
            "[{}_{}, {}_{}] on {}: {} but the bracket table gives {}",
            g[fail.x].name,
            fail.m,
            g[fail.y].name,
            fail.n,
            fail.state.display(g),
            fail.check.lhs.display(g),
            fail.check.rhs.display(g)
        )
    });
    let cases = (0..=max_w.twice()).map(|w2| basis(p, HalfInt::from_twice(w2)).len()).sum();
    Ok(SuiteResult { suite: "borcherds", cases, witness })
}

fn a_operator(p: &AlgebraPresentation, max_w: HalfInt) -> Result<SuiteResult, CliError> {
    let f = Hermitian::new(p)?;
    let mut cases = 0;
    for w2 in 0..=max_w.twice() {
        for s in states(p, w2) {
            cases += 1;
            let shown = || s.display(&p.generators).to_string();
            let witness = if !f.a_inverse_compose(&s).is_constant(&s) {
                Some(format!("A(1/z)A(z) ≠ id on {}", shown()))
            } else if f.g_apply(&f.g_apply(&s)) != s {
                Some(format!("g² ≠ id on {}", shown()))
            } else if f.omega_state(&f.omega_state(&s)) != s {
                Some(format!("ω² ≠ id on {}", shown()))
            } else {
                None
            };
            if witness.is_some() {
                return Ok(SuiteResult { suite: "a-operator", cases, witness });
            }
        }
    }
    Ok(SuiteResult { suite: "a-operator", cases, witness: None })
}

pub fn check(
    common: &Common,
    suite: Suite,
    max_w: Option<HalfInt>,
    levels: &[Rat],
    seed: u64,
    samples: usize,
) -> Result<Outcome, CliError> {
    if let Some(w) = max_w {
        check_cap(w, common)?;
    }
    let max_or = |d: HalfInt| max_w.unwrap_or(d);
    let half5 = HalfInt::from_twice(5);
    let mut results = Vec::new();
    if suite == Suite::Residue {
        results.push(residue(seed, samples)?);
    } else {
        let p = render::load(common)?.presentation;
        match suite {
            Suite::Invariance => results.push(invariance(&p, max_or(half5), levels)?),
            Suite::Zhu => results.push(zhu(&p)?),
            Suite::Borcherds => results.push(borcherds(&p, max_or(half5))?),
            Suite::AOperator => results.push(a_operator(&p, max_or(HalfInt::from_int(3)))?),
            Suite::Residue => unreachable!(),
            Suite::All => {
                results.push(invariance(&p, max_or(half5), levels)?);
                results.push(residue(seed, samples)?);
                if p.minimal_w.is_some() {
                    results.push(zhu(&p)?);
                }
                results.push(borcherds(&p, max_or(half5))?);
                results.push(a_operator(&p, max_or(HalfInt::from_int(3)))?);
            }
        }
    }
    let passed = results.iter().all(SuiteResult::passed);
    let status = |r: &SuiteResult| if r.passed() { "PASS" } else { "FAIL" };
    let text = match common.format {
        Format::Table => {
            let mut out = String::new();
            for r in &results {
                out.push_str(&format!("{}: {} ({} cases)\n", r.suite, status(r), r.cases));
                if let Some(w) = &r.witness {
                    out.push_str(&format!("  witness: {w}\n"));
                }
            }
            out
        }
        Format::Csv => {
            let mut rows = vec![["suite", "status", "cases", "witness"].map(String::from).to_vec()];
            rows.extend(results.iter().map(|r| {
                vec![r.suite.to_string(), status(r).to_string(), r.cases.to_string(), r.witness.clone().unwrap_or_default()]
            }));
            render::csv(&rows)
        }
        Format::Json => {
            let v: Vec<_> = results
                .iter()
                .map(|r| json!({"suite": r.suite, "passed": r.passed(), "cases": r.cases, "witness": r.witness}))
                .collect();
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    };
    Ok(Outcome { text, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use vform::presentation::fixtures;

    #[test]
    fn residue_suite_is_deterministic_and_passes() {
        let a = residue(7, 50).unwrap();
        assert!(a.passed());
        assert_eq!(a.cases, 50);
    }

    #[test]
    fn specialization_rejects_poles() {
        let p = fixtures::bershadsky_polyakov();
        let pole = p.poles()[0].clone();
        assert!(matches!(specializations(&p, &[pole]), Err(CliError::Input(_))));
        assert_eq!(specializations(&fixtures::fermion(), &[]).unwrap().len(), 1);
    }

    #[test]
    fn a_operator_suite_on_boson() {
        let r = a_operator(&fixtures::boson(), HalfInt::from_int(2)).unwrap();
        assert!(r.passed(), "{:?}", r.witness);
    }
}
