//! CSV and JSON forms of Gram matrices and signatures.

use serde::{Deserialize, Serialize};

use crate::presentation::GeneratorDecl;
use crate::scalar::{HalfInt, Scalar};

use super::form::GramMatrix;
use super::signature::{SignatureRecord, SignatureReport};
use super::HermitianError;

/// `{weight, basis, entries}` with monomials and scalars as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramRecord {
    pub weight: String,
    pub basis: Vec<String>,
    pub entries: Vec<Vec<Scalar>>,
}

impl GramRecord {
    pub fn new(g: &GramMatrix, gens: &[GeneratorDecl]) -> Self {
        GramRecord {
            weight: g.weight.to_string(),
            basis: g.basis.iter().map(|m| m.display(gens).to_string()).collect(),
            entries: g.entries.clone(),
        }
    }

    pub fn weight(&self) -> Result<HalfInt, HermitianError> {
        self.weight.parse().map_err(|e: crate::scalar::ScalarError| HermitianError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, HermitianError> {
        serde_json::from_str(text).map_err(|e| HermitianError::Format(e.to_string()))
    }

    /// Header `weight=<w>` then one row per basis monomial.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let mut header = vec![format!("weight={}", self.weight)];
        header.extend(self.basis.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (name, row) in self.basis.iter().zip(&self.entries) {
            let mut rec = vec![name.clone()];
            rec.extend(row.iter().map(|s| s.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn from_csv(text: &str) -> Result<Self, HermitianError> {
        let fmt = |m: String| HermitianError::Format(m);
        let mut r = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
        let mut rows = r.records();
        let header = rows.next().ok_or_else(|| fmt("empty CSV".into()))?.map_err(|e| fmt(e.to_string()))?;
        let weight = header
            .get(0)
            .and_then(|s| s.strip_prefix("weight="))
            .ok_or_else(|| fmt("first cell must be weight=<w>".into()))?
            .to_string();
        let basis: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut entries = Vec::with_capacity(basis.len());
        for (i, row) in rows.enumerate() {
            let row = row.map_err(|e| fmt(e.to_string()))?;
            if row.len() != basis.len() + 1 {
                return Err(fmt(format!("row {} has {} cells, expected {}", i + 1, row.len(), basis.len() + 1)));
            }
            let vals = row
                .iter()
                .skip(1)
                .enumerate()
                .map(|(j, s)| s.parse::<Scalar>().map_err(|e| fmt(format!("row {}, column {}: {e}", i + 1, j + 1))))
                .collect::<Result<Vec<_>, _>>()?;
            entries.push(vals);
        }
        if entries.len() != basis.len() {
            return Err(fmt(format!("expected {} rows, found {}", basis.len(), entries.len())));
        }
        Ok(GramRecord { weight, basis, entries })
    }
}

impl SignatureRecord {
    pub fn new(s: &SignatureReport, gens: &[GeneratorDecl]) -> Self {
        SignatureRecord {
            n_plus: s.n_plus,
            n_zero: s.n_zero,
            n_minus: s.n_minus,
            kernel: s.kernel_basis.iter().map(|v| v.display(gens).to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::Hermitian;
    use crate::presentation::fixtures;

    #[test]
    fn csv_and_json_round_trip() {
        let p = fixtures::affine_sl2();
        let h = Hermitian::new(&p).unwrap();
        let rec = GramRecord::new(&h.gram(HalfInt::from_int(2)), &p.generators);
        assert_eq!(GramRecord::from_csv(&rec.to_csv()).unwrap(), rec);
        assert_eq!(GramRecord::from_json(&rec.to_json()).unwrap(), rec);
        assert_eq!(rec.weight().unwrap(), HalfInt::from_int(2));
    }

    #[test]
    fn malformed_csv_reports_position() {
        let err = GramRecord::from_csv("weight=1,a_{-1}|0>\na_{-1}|0>,1/0\n").unwrap_err();
        assert!(err.to_string().contains("row 1"), "{err}");
    }
}
