//! Code specification files (TOML). See docs/codespec.md for the grammar.
//!
//! ```toml
//! field = "f4"
//! n = 3
//! generators = ["11", "1w", "1W"]
//! basis = [["1", "1", "1"], ["1", "w", "W"]]
//!
//! [claims]
//! nu = 1
//! d = 3
//! n_d = 3
//! ```

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::blockcode::{self, TbMode};
use crate::convcode::{self, ConvCode, OrthogonalBasis};
use crate::distance;
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::polyring::LaurentTuple;
use crate::search::{self, Check, RowClaim};

/// Optional claimed properties; each one present is checked by [`CodeSpecFile::verify`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_d: Option<u64>,
    /// Slope as "a/b".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    /// Minimal distance-preserving tail-biting length, in blocks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tb_length: Option<usize>,
}

impl Claims {
    pub fn is_empty(&self) -> bool {
        *self == Claims::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: String,
    pub n: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Claims::is_empty")]
    pub claims: Claims,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

/// Locates `needle` (a key or string value) in the text for error reporting.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    text.find(needle).map_or((1, 1), |o| line_col(text, o))
}

/// Message of a nested parse error, without its own position.
fn inner(e: Error) -> String {
    match e {
        Error::Parse { msg, .. } => msg,
        e => e.to_string(),
    }
}

fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    let (a, b) = s.split_once('/')?;
    let (a, b): (i64, i64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (b != 0).then(|| Ratio::new(a, b))
}

/// A verification run: named checks in order.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub d: u32,
    pub n_d: u64,
    pub alpha: Ratio<i64>,
    pub tb_length: Option<usize>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

impl CodeSpecFile {
    /// Parses and validates the shape of a spec. Code-level errors carry the
    /// position of the offending entry.
    pub fn parse(text: &str) -> Result<CodeSpecFile> {
        let spec: CodeSpecFile = toml::from_str(text).map_err(|e| {
            let (line, col) = e.span().map_or((1, 1), |r| line_col(text, r.start));
            Error::Parse { line, col, msg: e.message().to_string() }
        })?;
        let perr = |needle: &str, msg: String| {
            let (line, col) = locate(text, needle);
            Error::Parse { line, col, msg }
        };
        if spec.field_tag().is_none() {
            return Err(perr("field", format!("unknown field {:?} (expected f2 or f4)", spec.field)));
        }
        if spec.generators.len() != spec.n {
            return Err(perr("generators", format!("n = {} but {} generators given", spec.n, spec.generators.len())));
        }
        let field = spec.field_tag().unwrap();
        for g in &spec.generators {
            LaurentTuple::parse(field, &[g]).map_err(|e| perr(&format!("\"{g}\""), inner(e)))?;
        }
        if let Some(b) = &spec.basis {
            for row in b {
                if row.len() != spec.n {
                    return Err(perr("basis", format!("basis row has {} entries, expected {}", row.len(), spec.n)));
                }
                LaurentTuple::parse(field, row).map_err(|e| perr("basis", inner(e)))?;
            }
        }
        if let Some(a) = &spec.claims.alpha {
            if parse_ratio(a).is_none() {
                return Err(perr("alpha", format!("slope {a:?} is not a/b")));
            }
        }
        Ok(spec)
    }

    pub fn field_tag(&self) -> Option<Field> {
        Field::parse(&self.field)
    }

    /// Builds the convolutional code (canonical generator form).
    pub fn code(&self) -> Result<ConvCode> {
        let field = self.field_tag().ok_or_else(|| Error::Invalid(format!("unknown field {}", self.field)))?;
        ConvCode::parse(field, &self.generators)
    }

    pub fn basis_tuples(&self) -> Result<Option<Vec<LaurentTuple>>> {
        let field = self.field_tag().ok_or_else(|| Error::Invalid(format!("unknown field {}", self.field)))?;
        self.basis.as_ref().map(|b| b.iter().map(|r| LaurentTuple::parse(field, r)).collect()).transpose()
    }

    /// Parses, builds the code and checks the cheap claims (ν, d, N).
    pub fn load(text: &str) -> Result<(CodeSpecFile, ConvCode)> {
        let spec = CodeSpecFile::parse(text)?;
        let code = spec.code()?;
        if let Some(nu) = spec.claims.nu {
            if nu != code.nu() {
                return Err(Error::Invalid(format!("claimed nu {nu}, generator has degree {}", code.nu())));
            }
        }
        if spec.claims.d.is_some() || spec.claims.n_d.is_some() {
            let r = distance::analyze(&code)?;
            if spec.claims.d.is_some_and(|d| d != r.d_perp) || spec.claims.n_d.is_some_and(|n| n != r.n_d) {
                return Err(Error::Invalid(format!("claimed distance does not match: d = {}, N = {}", r.d_perp, r.n_d)));
            }
        }
        Ok((spec, code))
    }

    /// Spec for `code`, optionally with its minimal orthogonal basis and claims.
    pub fn from_code(code: &ConvCode, with_basis: bool, claims: Claims) -> CodeSpecFile {
        CodeSpecFile {
            name: None,
            field: code.field().name().to_string(),
            n: code.n(),
            generators: code.g().to_strings(),
            basis: with_basis.then(|| code.dual_basis().h().iter().map(|t| t.to_strings()).collect()),
            claims,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    /// Full certificate chain: self-orthogonality, non-catastrophicity,
    /// orthogonal basis, d⊥ and N, slope, and the minimal distance-preserving
    /// tail-biting length against its bound.
    pub fn verify(&self) -> Result<VerifyReport> {
        let field = self.field_tag().ok_or_else(|| Error::Invalid(format!("unknown field {}", self.field)))?;
        let g = LaurentTuple::parse(field, &self.generators)?;
        let claim = RowClaim { g: g.clone(), h: self.basis_tuples()?, d: self.claims.d, n_d: self.claims.n_d };
        let rv = search::table_row_verify(&claim)?;
        let mut checks = rv.checks.clone();
        let code = match ConvCode::new(g) {
            Ok(c) => c,
            Err(_) => return Ok(VerifyReport { checks, d: rv.d, n_d: rv.n_d, alpha: rv.alpha, tb_length: None }),
        };
        if let Some(nu) = self.claims.nu {
            checks.push(Check::new("nu", nu, code.nu()));
        }
        let cert = code.dual_basis().certificate(&code);
        checks.push(Check::new("basis minimal", true, cert.minimal()));
        checks.push(Check::new("basis minor gcd", "1", cert.minor_gcd));
        if let Some(a) = &self.claims.alpha {
            checks.push(Check::new("alpha", parse_ratio(a).unwrap_or_default(), rv.alpha));
        }
        let mut tb_length = None;
        if convcode::is_self_orthogonal(code.g()) {
            let bound = blockcode::handlery_bound(rv.d, rv.alpha);
            let r = blockcode::min_tailbiting_length(&code, TbMode::DistancePreserving)?;
            checks.push(Check::new("tail-biting length within bound", true, r.l <= bound && r.ranks_ok));
            if let Some(l) = self.claims.tb_length {
                checks.push(Check::new("tail-biting length", l, r.l));
            }
            tb_length = Some(r.l);
        }
        Ok(VerifyReport { checks, d: rv.d, n_d: rv.n_d, alpha: rv.alpha, tb_length })
    }
}

/// Whether two specs describe the same code and basis module.
pub fn same_code(a: &CodeSpecFile, b: &CodeSpecFile) -> Result<bool> {
    let (ca, cb) = (a.code()?, b.code()?);
    if ca != cb {
        return Ok(false);
    }
    Ok(match (a.basis_tuples()?, b.basis_tuples()?) {
        (None, None) => true,
        (Some(x), Some(y)) => {
            OrthogonalBasis::from_tuples(&ca, x)?.same_module(&OrthogonalBasis::from_tuples(&cb, y)?)
        }
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "field = \"f4\"\nn = 3\ngenerators = [\"111\", \"1w1\", \"11\"]\nbasis = [[\"0w\", \"0W\", \"11\"], [\"1\", \"1W\", \"1W\"]]\n\n[claims]\nnu = 2\nd = 4\n";

    #[test]
    fn parse_and_verify() {
        let s = CodeSpecFile::parse(EX).unwrap();
        let r = s.verify().unwrap();
        assert!(r.ok(), "{:?}", r.checks);
        assert_eq!(r.d, 4);
    }

    #[test]
    fn round_trip() {
        let s = CodeSpecFile::parse(EX).unwrap();
        let t = CodeSpecFile::parse(&s.to_toml()).unwrap();
        assert_eq!(s, t);
        let c = s.code().unwrap();
        let e = CodeSpecFile::from_code(&c, true, Claims::default());
        assert!(same_code(&e, &CodeSpecFile::parse(&e.to_toml()).unwrap()).unwrap());
    }

    #[test]
    fn errors_have_positions() {
        let bad = "field = \"f4\"\nn = 3\ngenerators = [\"11\", \"1q\", \"1W\"]\n";
        match CodeSpecFile::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match CodeSpecFile::parse("field = \"f4\"\nn = \n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn corrupted_spec_fails() {
        let s = CodeSpecFile::parse(&EX.replace("\"11\"]", "\"1w\"]")).unwrap();
        let r = s.verify().unwrap();
        assert!(!r.ok());
        assert!(r.checks.iter().any(|c| c.name == "self-orthogonal" && !c.ok));
    }
}
