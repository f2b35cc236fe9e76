//! `describe`, `gram`, `unitarity` and `collapsing`.

use std::fmt::Write as _;

use serde_json::json;

use vform::engine::{self, Engine};
use vform::hermitian::{collapsing_candidates, unitarity_report, GramRecord, Hermitian, UnitarityReport};
use vform::presentation::config::PresentationConfig;
use vform::presentation::{self, minimal_w_central_charge, AlgebraPresentation};
use vform::{HalfInt, Rat, Scalar};

use crate::render::{self, Loaded};
use crate::{check_cap, CliError, Common, Format, Outcome};

fn names(p: &AlgebraPresentation) -> Vec<String> {
    p.generators.iter().map(|g| g.name.clone()).collect()
}

/// Unitarity hint for the free-field families, read off the configured space.
fn candidate_line(cfg: &PresentationConfig) -> Option<String> {
    match cfg {
        PresentationConfig::FreeFermion { space, .. } => {
            let odd = space.basis.iter().all(|b| b.parity == 1);
            Some(format!("unitary candidate: A purely odd = {odd}"))
        }
        PresentationConfig::FreeBoson { space, .. } => {
            let even = space.basis.iter().all(|b| b.parity == 0);
            Some(format!("unitary candidate: A purely even = {even}"))
        }
        _ => None,
    }
}

pub fn describe(common: &Common) -> Result<Outcome, CliError> {
    let Loaded { config, presentation: p } = render::load(common)?;
    let issues = presentation::validate(&p);
    let engine = Engine::new(&p)?;
    let names = names(&p);
    let mut rows = Vec::new();
    for (x, g) in p.generators.iter().enumerate() {
        let qp = engine.check_primary(x, 2)?.is_quasiprimary();
        rows.push(vec![
            g.name.clone(),
            g.delta.to_string(),
            if g.parity == 0 { "even".into() } else { "odd".into() },
            render::lincomb(&g.phi, &names),
            if qp { "yes".into() } else { "no".into() },
        ]);
    }
    let c = engine::central_charge(&p)?;
    let formula = p.minimal_w.as_ref().map(|d| {
        (
            format!(
                "c(k) = k·sdim/(k+h^∨) − 6k + h^∨ − 4 with sdim = {}, h^∨ = {}: {}",
                d.sdim,
                d.h_dual,
                minimal_w_central_charge(&d.sdim, &d.h_dual)
            ),
            format!("p(k) = {}", d.p_of_k()),
        )
    });
    let candidate = candidate_line(&config);

    let text = match common.format {
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "presentation: {}", p.name).unwrap();
            out.push_str(&render::table(&["generator", "weight", "parity", "phi", "quasiprimary"], &rows));
            if issues.is_empty() {
                writeln!(out, "validation: ok").unwrap();
            } else {
                for i in &issues {
                    writeln!(out, "validation: {i}").unwrap();
                }
            }
            writeln!(out, "central charge: {c}").unwrap();
            if let Some((f, pk)) = &formula {
                writeln!(out, "{f}").unwrap();
                writeln!(out, "{pk}").unwrap();
            }
            if let Some(line) = &candidate {
                writeln!(out, "{line}").unwrap();
            }
            out
        }
        Format::Csv => {
            let mut all = vec![["generator", "weight", "parity", "phi", "quasiprimary"].map(String::from).to_vec()];
            all.extend(rows);
            render::csv(&all)
        }
        Format::Json => {
            let gens: Vec<_> = rows
                .iter()
                .map(|r| json!({"name": r[0], "weight": r[1], "parity": r[2], "phi": r[3], "quasiprimary": r[4] == "yes"}))
                .collect();
            let v = json!({
                "name": p.name,
                "generators": gens,
                "validation": issues.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "central_charge": c.to_string(),
                "minimal_w": formula.as_ref().map(|(f, pk)| json!({"central_charge": f, "p": pk})),
                "unitary_candidate": candidate,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    };
    Ok(Outcome::ok(text))
}

pub fn gram(common: &Common, w: HalfInt, levels: &[Rat]) -> Result<Outcome, CliError> {
    check_cap(w, common)?;
    if levels.len() > 1 {
        return Err(CliError::Input("gram takes at most one --level".into()));
    }
    let Loaded { presentation: p, .. } = render::load(common)?;
    let form = Hermitian::new(&p)?;
    let g = form.gram(w);
    let mut record = GramRecord::new(&g, &p.generators);
    if let Some(k0) = levels.first() {
        record.entries = g
            .specialize(k0)?
            .into_iter()
            .map(|row| row.into_iter().map(Scalar::from_gauss).collect())
            .collect();
    }
    let text = match common.format {
        Format::Csv => record.to_csv(),
        Format::Json => record.to_json() + "\n",
        Format::Table => {
            let mut out = String::new();
            match levels.first() {
                Some(k0) => writeln!(out, "Gram matrix of {} at weight {w}, k = {k0} (dimension {})", p.name, g.dim()),
                None => writeln!(out, "Gram matrix of {} at weight {w} (dimension {})", p.name, g.dim()),
            }
            .unwrap();
            let mut header = vec![""];
            header.extend(record.basis.iter().map(String::as_str));
            let rows: Vec<Vec<String>> = record
                .basis
                .iter()
                .zip(&record.entries)
                .map(|(b, row)| std::iter::once(b.clone()).chain(row.iter().map(ToString::to_string)).collect())
                .collect();
            out.push_str(&render::table(&header, &rows));
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn verdict_json(r: &UnitarityReport, p: &AlgebraPresentation) -> serde_json::Value {
    let weights: Vec<_> = r
        .weights
        .iter()
        .map(|ws| {
            json!({
                "weight": ws.weight.to_string(),
                "dim": ws.signature.dim(),
                "n_plus": ws.signature.n_plus,
                "n_zero": ws.signature.n_zero,
                "n_minus": ws.signature.n_minus,
                "kernel": ws.signature.kernel_basis.iter().map(|v| v.display(&p.generators).to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "level": r.level.as_ref().map(ToString::to_string),
        "weights": weights,
        "verdict": r.verdict.to_string(),
    })
}

pub fn unitarity(common: &Common, max_w: HalfInt, levels: &[Rat]) -> Result<Outcome, CliError> {
    check_cap(max_w, common)?;
    let Loaded { presentation: p, .. } = render::load(common)?;
    if p.depends_on_level() && levels.is_empty() {
        return Err(CliError::Input(format!("{} depends on k; pass --level", p.name)));
    }
    let reports = if levels.is_empty() {
        vec![unitarity_report(&p, max_w, None)?]
    } else {
        levels.iter().map(|k0| unitarity_report(&p, max_w, Some(k0))).collect::<Result<Vec<_>, _>>()?
    };
    let kernel = |r: &vform::hermitian::WeightSignature| {
        r.signature.kernel_basis.iter().map(|v| v.display(&p.generators).to_string()).collect::<Vec<_>>().join("; ")
    };
    let text = match common.format {
        Format::Table => {
            let mut out = String::new();
            for r in &reports {
                match &r.level {
                    Some(k0) => writeln!(out, "{} at k = {k0}", p.name),
                    None => writeln!(out, "{}", p.name),
                }
                .unwrap();
                let rows: Vec<Vec<String>> = r
                    .weights
                    .iter()
                    .map(|ws| {
                        vec![
                            ws.weight.to_string(),
                            ws.signature.dim().to_string(),
                            ws.signature.n_plus.to_string(),
                            ws.signature.n_zero.to_string(),
                            ws.signature.n_minus.to_string(),
                            kernel(ws),
                        ]
                    })
                    .collect();
                out.push_str(&render::table(&["weight", "dim", "n+", "n0", "n-", "kernel"], &rows));
                writeln!(out, "verdict: {}", r.verdict).unwrap();
            }
            out
        }
        Format::Csv => {
            let mut rows = vec![["level", "weight", "dim", "n_plus", "n_zero", "n_minus", "kernel"].map(String::from).to_vec()];
            for r in &reports {
                let level = r.level.as_ref().map(ToString::to_string).unwrap_or_default();
                for ws in &r.weights {
                    rows.push(vec![
                        level.clone(),
                        ws.weight.to_string(),
                        ws.signature.dim().to_string(),
                        ws.signature.n_plus.to_string(),
                        ws.signature.n_zero.to_string(),
                        ws.signature.n_minus.to_string(),
                        kernel(ws),
                    ]);
                }
            }
            render::csv(&rows)
        }
        Format::Json => {
            let v: Vec<_> = reports.iter().map(|r| verdict_json(r, &p)).collect();
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    };
    Ok(Outcome::ok(text))
}

pub fn collapsing(common: &Common, max_w: HalfInt) -> Result<Outcome, CliError> {
    check_cap(max_w, common)?;
    let Loaded { presentation: p, .. } = render::load(common)?;
    let report = collapsing_candidates(&p, max_w)?;
    let p_roots = match &p.minimal_w {
        Some(d) => Some(d.p_of_k().rational_roots()?),
        None => None,
    };
    let is_root = |k: &Rat| p_roots.as_ref().map(|r| r.contains(k));
    let evidence = |c: &vform::hermitian::CollapsingCandidate| {
        c.evidence.iter().map(|e| format!("w={} kernel {}", e.weight, e.kernel_dim)).collect::<Vec<_>>().join("; ")
    };
    let yes_no = |b: Option<bool>| match b {
        Some(true) => "yes".to_string(),
        Some(false) => "no".to_string(),
        None => String::new(),
    };
    let text = match common.format {
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "collapsing candidates for {} up to weight {max_w}", p.name).unwrap();
            if let (Some(d), Some(roots)) = (&p.minimal_w, &p_roots) {
                let roots: Vec<String> = roots.iter().map(ToString::to_string).collect();
                writeln!(out, "p(k) = {}; rational roots: {}", d.p_of_k(), roots.join(", ")).unwrap();
            }
            if !report.degenerate_weights.is_empty() {
                let ws: Vec<String> = report.degenerate_weights.iter().map(ToString::to_string).collect();
                writeln!(out, "identically degenerate weights: {}", ws.join(", ")).unwrap();
            }
            if report.candidates.is_empty() {
                writeln!(out, "no candidates").unwrap();
            } else {
                let rows: Vec<Vec<String>> = report
                    .candidates
                    .iter()
                    .map(|c| vec![c.level.to_string(), yes_no(is_root(&c.level)), evidence(c)])
                    .collect();
                out.push_str(&render::table(&["level", "p(k) root", "evidence"], &rows));
            }
            out
        }
        Format::Csv => {
            let mut rows = vec![["level", "p_root", "evidence"].map(String::from).to_vec()];
            rows.extend(
                report.candidates.iter().map(|c| vec![c.level.to_string(), yes_no(is_root(&c.level)), evidence(c)]),
            );
            render::csv(&rows)
        }
        Format::Json => {
            let cands: Vec<_> = report
                .candidates
                .iter()
                .map(|c| {
                    json!({
                        "level": c.level.to_string(),
                        "p_root": is_root(&c.level),
                        "evidence": c.evidence.iter().map(|e| json!({"weight": e.weight.to_string(), "kernel_dim": e.kernel_dim})).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let v = json!({
                "presentation": p.name,
                "max_weight": max_w.to_string(),
                "p_roots": p_roots.as_ref().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()),
                "degenerate_weights": report.degenerate_weights.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "candidates": cands,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    };
    Ok(Outcome::ok(text))
}
