//! JSON configuration for presentations.
//!
//! The top-level object carries a `"type"` tag:
//!
//! * `free_fermion`, `free_boson` — `{"space": Space}`
//! * `affine` — `{"algebra": Lie, "h_dual"?: rat}`
//! * `virasoro` — `{"c": scalar}`
//! * `minimal_w` — `{"gnat": Lie, "ideals"?: [..], "ideal_h_dual": [..],
//!   "ghalf": [basis], "action": [[a, u, [[coeff, v], ..]], ..],
//!   "pairing": matrix, "ghalf_phi"?: .., "h_dual", "sdim", "p_k": [p2, p1, p0]}`
//! * `tensor` — `{"factors": [config, ..]}`
//! * `custom` — `{"generators": [..], "brackets": [{i, j, t, terms}], "conformal": ..}`
//!
//! Scalars are strings in the scalar syntax (`"1/2"`, `"k+3"`, `"0+1*i"`) or
//! JSON integers. Structure constants are triples `[i, j, [[coeff, target], ..]]`;
//! a pair given in one order only is completed by super-skew-symmetry.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::scalar::{GaussRat, HalfInt, Rat, Scalar};

use super::builders::{build_affine, build_free_boson, build_free_fermion, build_virasoro, tensor};
use super::lie::{LieData, SuperSpace};
use super::minimal_w::{build_minimal_w, MinimalWDatum};
use super::types::{
    AlgebraPresentation, ConformalVector, Factor, GeneratorDecl, LambdaBracketTable, LinComb, NOPoly, NOTerm,
};
use super::{validate, PresentationError};

/// A coefficient in ℚ(i), written in the scalar syntax without `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coeff(pub GaussRat);

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = Scalar::deserialize(d)?;
        s.as_constant()
            .map(Coeff)
            .ok_or_else(|| serde::de::Error::custom(format!("coefficient `{s}` must not depend on k")))
    }
}

/// A rational number, as a string `"p/q"` or a JSON integer.
#[derive(Clone, Debug, PartialEq)]
pub struct RatValue(pub Rat);

impl<'de> Deserialize<'de> for RatValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = Scalar::deserialize(d)?;
        match s.as_constant() {
            Some(c) if c.is_real() => Ok(RatValue(c.re)),
            _ => Err(serde::de::Error::custom(format!("`{s}` is not a rational number"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisConfig {
    pub name: String,
    #[serde(default)]
    pub parity: u8,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub basis: Vec<BasisConfig>,
    pub form: Vec<Vec<Coeff>>,
    /// `phi[i]` lists `[coeff, index]` pairs of φ(a_i); identity when absent.
    #[serde(default)]
    pub phi: Option<Vec<Vec<(Coeff, usize)>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieConfig {
    #[serde(flatten)]
    pub space: SpaceConfig,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, Vec<(Coeff, usize)>)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub name: String,
    pub delta: RatValue,
    #[serde(default)]
    pub parity: u8,
    #[serde(default)]
    pub phi: Option<Vec<(Coeff, usize)>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub coeff: Scalar,
    #[serde(default)]
    pub factors: Vec<(u32, usize)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketConfig {
    pub i: usize,
    pub j: usize,
    pub t: u32,
    pub terms: Vec<TermConfig>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConformalConfig {
    Generator(usize),
    Terms(Vec<TermConfig>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinimalWConfig {
    pub gnat: LieConfig,
    #[serde(default)]
    pub ideals: Option<Vec<usize>>,
    #[serde(default)]
    pub ideal_h_dual: Vec<RatValue>,
    pub ghalf: Vec<BasisConfig>,
    #[serde(default)]
    pub action: Vec<(usize, usize, Vec<(Coeff, usize)>)>,
    pub pairing: Vec<Vec<Coeff>>,
    #[serde(default)]
    pub ghalf_phi: Option<Vec<Vec<(Coeff, usize)>>>,
    pub h_dual: RatValue,
    pub sdim: RatValue,
    pub p_k: [RatValue; 3],
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PresentationConfig {
    FreeFermion {
        #[serde(default)]
        name: Option<String>,
        space: SpaceConfig,
    },
    FreeBoson {
        #[serde(default)]
        name: Option<String>,
        space: SpaceConfig,
    },
    Affine {
        #[serde(default)]
        name: Option<String>,
        algebra: LieConfig,
        #[serde(default)]
        h_dual: Option<RatValue>,
    },
    Virasoro {
        #[serde(default)]
        name: Option<String>,
        c: Scalar,
    },
    MinimalW {
        #[serde(default)]
        name: Option<String>,
        #[serde(flatten)]
        datum: MinimalWConfig,
    },
    Tensor {
        #[serde(default)]
        name: Option<String>,
        factors: Vec<PresentationConfig>,
    },
    Custom {
        #[serde(default)]
        name: Option<String>,
        generators: Vec<GeneratorConfig>,
        #[serde(default)]
        brackets: Vec<BracketConfig>,
        conformal: ConformalConfig,
        #[serde(default)]
        central_charge: Option<Scalar>,
    },
}

fn config_err(field: impl Into<String>, message: impl Into<String>) -> PresentationError {
    PresentationError::Config { field: field.into(), message: message.into() }
}

fn lincomb(terms: &[(Coeff, usize)]) -> LinComb {
    LinComb::from_terms(terms.iter().map(|(c, i)| (*i, c.0.clone())))
}

fn phi_list(phi: &Option<Vec<Vec<(Coeff, usize)>>>, n: usize, field: &str) -> Result<Vec<LinComb>, PresentationError> {
    match phi {
        None => Ok((0..n).map(LinComb::basis).collect()),
        Some(rows) if rows.len() == n => Ok(rows.iter().map(|r| lincomb(r)).collect()),
        Some(rows) => Err(config_err(field, format!("expected {n} images, found {}", rows.len()))),
    }
}

impl SpaceConfig {
    pub fn to_space(&self, field: &str) -> Result<SuperSpace, PresentationError> {
        let n = self.basis.len();
        if self.form.len() != n || self.form.iter().any(|r| r.len() != n) {
            return Err(config_err(format!("{field}.form"), format!("expected a {n}×{n} matrix")));
        }
        Ok(SuperSpace {
            names: self.basis.iter().map(|b| b.name.clone()).collect(),
            parities: self.basis.iter().map(|b| b.parity).collect(),
            form: self.form.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect(),
            phi: phi_list(&self.phi, n, &format!("{field}.phi"))?,
        })
    }
}

impl LieConfig {
    pub fn to_lie(&self, field: &str) -> Result<LieData, PresentationError> {
        let space = self.space.to_space(field)?;
        let n = space.dim();
        let mut bracket: BTreeMap<(usize, usize), LinComb> = BTreeMap::new();
        for (idx, (i, j, terms)) in self.brackets.iter().enumerate() {
            if *i >= n || *j >= n || terms.iter().any(|(_, t)| *t >= n) {
                return Err(config_err(format!("{field}.brackets[{idx}]"), "index out of range"));
            }
            bracket.insert((*i, *j), lincomb(terms));
        }
        let given: Vec<(usize, usize)> = bracket.keys().copied().collect();
        for (i, j) in given {
            if !bracket.contains_key(&(j, i)) {
                let odd_pair = space.parities[i] * space.parities[j] == 1;
                let s = GaussRat::from_int(if odd_pair { 1 } else { -1 });
                let v = bracket[&(i, j)].scale(&s);
                bracket.insert((j, i), v);
            }
        }
        bracket.retain(|_, v| !v.is_zero());
        Ok(LieData { space, bracket })
    }
}

impl MinimalWConfig {
    pub fn to_datum(&self) -> Result<MinimalWDatum, PresentationError> {
        let gnat = self.gnat.to_lie("gnat")?;
        let n = gnat.dim();
        let m = self.ghalf.len();
        let ideal_of = self.ideals.clone().unwrap_or_else(|| vec![0; n]);
        let mut ideal_h_dual: Vec<Rat> = self.ideal_h_dual.iter().map(|r| r.0.clone()).collect();
        if ideal_h_dual.is_empty() && n > 0 {
            ideal_h_dual.push(Rat::zero());
        }
        let mut action = BTreeMap::new();
        for (idx, (a, u, terms)) in self.action.iter().enumerate() {
            if *a >= n || *u >= m || terms.iter().any(|(_, v)| *v >= m) {
                return Err(config_err(format!("action[{idx}]"), "index out of range"));
            }
            action.insert((*a, *u), lincomb(terms));
        }
        if self.pairing.len() != m || self.pairing.iter().any(|r| r.len() != m) {
            return Err(config_err("pairing", format!("expected a {m}×{m} matrix")));
        }
        Ok(MinimalWDatum {
            gnat,
            ideal_of,
            ideal_h_dual,
            ghalf_names: self.ghalf.iter().map(|b| b.name.clone()).collect(),
            ghalf_parities: self.ghalf.iter().map(|b| b.parity).collect(),
            action,
            pairing: self.pairing.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect(),
            ghalf_phi: phi_list(&self.ghalf_phi, m, "ghalf_phi")?,
            h_dual: self.h_dual.0.clone(),
            sdim: self.sdim.0.clone(),
            pk: [self.p_k[0].0.clone(), self.p_k[1].0.clone(), self.p_k[2].0.clone()],
        })
    }
}

fn terms_to_poly(terms: &[TermConfig], n: usize, field: &str) -> Result<NOPoly, PresentationError> {
    let mut p = NOPoly::zero();
    for (idx, t) in terms.iter().enumerate() {
        if t.factors.iter().any(|(_, g)| *g >= n) {
            return Err(config_err(format!("{field}.terms[{idx}]"), "unknown generator index"));
        }
        p.push(NOTerm::new(t.coeff.clone(), t.factors.iter().map(|&(m, g)| Factor::new(m, g)).collect()));
    }
    Ok(p)
}

impl PresentationConfig {
    pub fn build(&self) -> Result<AlgebraPresentation, PresentationError> {
        let (name, mut p) = match self {
            PresentationConfig::FreeFermion { name, space } => (name, build_free_fermion(&space.to_space("space")?)?),
            PresentationConfig::FreeBoson { name, space } => (name, build_free_boson(&space.to_space("space")?)?),
            PresentationConfig::Affine { name, algebra, h_dual } => {
                (name, build_affine(&algebra.to_lie("algebra")?, h_dual.as_ref().map(|h| h.0.clone()))?)
            }
            PresentationConfig::Virasoro { name, c } => (name, build_virasoro(c.clone())),
            PresentationConfig::MinimalW { name, datum } => (name, build_minimal_w(&datum.to_datum()?)?),
            PresentationConfig::Tensor { name, factors } => {
                let mut acc = super::builders::trivial();
                for (idx, f) in factors.iter().enumerate() {
                    let next = f.build().map_err(|e| match e {
                        PresentationError::Config { field, message } => {
                            config_err(format!("factors[{idx}].{field}"), message)
                        }
                        other => other,
                    })?;
                    acc = if idx == 0 { next } else { tensor(&acc, &next)? };
                }
                (name, acc)
            }
            PresentationConfig::Custom { name, generators, brackets, conformal, central_charge } => {
                let n = generators.len();
                let mut gens = Vec::with_capacity(n);
                for (idx, g) in generators.iter().enumerate() {
                    let delta = HalfInt::from_rat(&g.delta.0)
                        .map_err(|e| config_err(format!("generators[{idx}].delta"), e.to_string()))?;
                    let phi = match &g.phi {
                        None => LinComb::basis(idx),
                        Some(t) => lincomb(t),
                    };
                    gens.push(GeneratorDecl { name: g.name.clone(), delta, parity: g.parity, phi });
                }
                let mut table = LambdaBracketTable::new();
                for (idx, b) in brackets.iter().enumerate() {
                    if b.i >= n || b.j >= n {
                        return Err(config_err(format!("brackets[{idx}]"), "unknown generator index"));
                    }
                    let poly = terms_to_poly(&b.terms, n, &format!("brackets[{idx}]"))?;
                    table.add(b.i, b.j, b.t, &poly);
                }
                let conformal = match conformal {
                    ConformalConfig::Generator(g) => ConformalVector::Generator(*g),
                    ConformalConfig::Terms(t) => ConformalVector::Composite(terms_to_poly(t, n, "conformal")?),
                };
                let p = AlgebraPresentation {
                    name: "custom".into(),
                    generators: gens,
                    brackets: table,
                    conformal,
                    central_charge: central_charge.clone(),
                    minimal_w: None,
                };
                let issues = validate(&p);
                if !issues.is_empty() {
                    return Err(PresentationError::Invalid(issues));
                }
                (name, p)
            }
        };
        if let Some(n) = name {
            p.name = n.clone();
        }
        Ok(p)
    }
}

/// Parse JSON text into a configuration without building it.
pub fn parse_str(text: &str) -> Result<PresentationConfig, PresentationError> {
    serde_json::from_str(text).map_err(|e| config_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

/// Parse and build a presentation from JSON text.
pub fn load_str(text: &str) -> Result<AlgebraPresentation, PresentationError> {
    parse_str(text)?.build()
}

/// Read, parse and build a presentation from a JSON file.
pub fn load_path(path: &Path) -> Result<AlgebraPresentation, PresentationError> {
    let text = std::fs::read_to_string(path).map_err(|e| config_err(path.display().to_string(), e.to_string()))?;
    load_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures;

    #[test]
    fn fermion_config() {
        let p = load_str(
            r#"{"type":"free_fermion","name":"fermion",
                "space":{"basis":[{"name":"a","parity":1}],"form":[["1"]],"phi":[[["-1",0]]]}}"#,
        )
        .unwrap();
        let f = fixtures::fermion();
        assert_eq!(p.generators, f.generators);
        assert_eq!(p.brackets, f.brackets);
        assert_eq!(p.conformal, f.conformal);
    }

    #[test]
    fn affine_config_completes_skew_pairs() {
        let p = load_str(
            r#"{"type":"affine",
                "algebra":{"basis":[{"name":"e"},{"name":"h"},{"name":"f"}],
                  "form":[[0,0,1],[0,2,0],[1,0,0]],
                  "phi":[[["-1",2]],[["-1",1]],[["-1",0]]],
                  "brackets":[[0,2,[[1,1]]],[1,0,[[2,0]]],[1,2,[[-2,2]]]]}}"#,
        )
        .unwrap();
        let q = fixtures::affine_sl2();
        assert_eq!(p.brackets, q.brackets);
        assert_eq!(p.conformal, q.conformal);
    }

    #[test]
    fn malformed_scalar_is_a_parse_error() {
        let err = load_str(r#"{"type":"virasoro","c":"1/0"}"#).unwrap_err();
        assert!(matches!(err, PresentationError::Config { .. }), "{err}");
        let err = load_str("{\"type\":\"virasoro\",\n \"c\": }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn custom_config_round_trip_of_virasoro() {
        let p = load_str(
            r#"{"type":"custom","generators":[{"name":"L","delta":2}],
                "brackets":[{"i":0,"j":0,"t":0,"terms":[{"coeff":1,"factors":[[1,0]]}]},
                            {"i":0,"j":0,"t":1,"terms":[{"coeff":2,"factors":[[0,0]]}]},
                            {"i":0,"j":0,"t":3,"terms":[{"coeff":"1/4"}]}],
                "conformal":{"generator":0}}"#,
        )
        .unwrap();
        assert_eq!(p.brackets, fixtures::virasoro_half().brackets);
    }

    #[test]
    fn custom_config_reports_inhomogeneous_entry() {
        let err = load_str(
            r#"{"type":"custom","generators":[{"name":"L","delta":2}],
                "brackets":[{"i":0,"j":0,"t":1,"terms":[{"coeff":1}]}],
                "conformal":{"generator":0}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("(0, 0, 1)"), "{err}");
    }
}
