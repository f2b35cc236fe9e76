//! Loading configurations and laying out plain-text tables.

use std::fmt::Write as _;
use std::path::Path;

use vform::presentation::config::{self, PresentationConfig};
use vform::presentation::{AlgebraPresentation, LinComb};

use crate::{CliError, Common};

/// A parsed configuration together with the presentation it builds.
pub struct Loaded {
    pub config: PresentationConfig,
    pub presentation: AlgebraPresentation,
}

pub fn load(common: &Common) -> Result<Loaded, CliError> {
    let path = common.config.as_deref().ok_or_else(|| CliError::Input("--config PATH is required".into()))?;
    load_path(path)
}

pub fn load_path(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let config = config::parse_str(&text)?;
    let presentation = config.build()?;
    Ok(Loaded { config, presentation })
}

/// `c·name` terms joined by ` + `, with unit coefficients suppressed.
pub fn lincomb(lc: &LinComb, names: &[String]) -> String {
    if lc.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (i, c)) in lc.terms().iter().enumerate() {
        let c = c.to_string();
        let name = names.get(*i).map(String::as_str).unwrap_or("?");
        let term = match c.as_str() {
            "1" => name.to_string(),
            "-1" => format!("-{name}"),
            _ => format!("({c})·{name}"),
        };
        if n > 0 {
            match term.strip_prefix('-') {
                Some(rest) => write!(out, " - {rest}").unwrap(),
                None => write!(out, " + {term}").unwrap(),
            }
        } else {
            out.push_str(&term);
        }
    }
    out
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let ncol = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (j, cell) in row.iter().enumerate().take(ncol) {
            width[j] = width[j].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (j, cell) in cells.iter().enumerate() {
            if j + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let pad = width[j] - cell.chars().count();
                write!(s, "{cell}{}  ", " ".repeat(pad)).unwrap();
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

/// Records written with the `csv` crate's quoting rules.
pub fn csv(rows: &[Vec<String>]) -> String {
    let mut w = ::csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
