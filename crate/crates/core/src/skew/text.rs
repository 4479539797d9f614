//! The `c0 + c1*x + c2*x^2` text format.
//!
//! Terms are `label`, `label*x` or `label*x^k` joined by `" + "`. Zero
//! coefficients are omitted and the zero polynomial is written `0`. Labels
//! never contain whitespace or `*`, so splitting is unambiguous.

use thiserror::Error;

use crate::ring::{Elem, FiniteRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty term in `{0}`")]
    EmptyTerm(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("malformed power `{0}`, expected `x` or `x^k`")]
    BadPower(String),
    #[error("negative exponent {0} in an ordinary polynomial")]
    NegativeExponent(i64),
}

fn term(label: &str, e: i64) -> String {
    match e {
        0 => label.to_string(),
        1 => format!("{label}*x"),
        _ => format!("{label}*x^{e}"),
    }
}

pub(super) fn render(ring: &FiniteRing, min_exp: i64, coeffs: &[Elem]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| !ring.is_zero(c))
        .map(|(k, &c)| term(ring.label(c), min_exp + k as i64))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Reads `(exponent, coefficient)` terms. Repeated exponents are returned
/// separately and summed by the caller.
pub(super) fn parse(ring: &FiniteRing, s: &str) -> Result<Vec<(i64, Elem)>, ParseError> {
    let s = s.trim();
    if s == "0" && ring.lookup("0").is_none() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for raw in s.split(" + ") {
        let t = raw.trim();
        if t.is_empty() {
            return Err(ParseError::EmptyTerm(s.to_string()));
        }
        let (label, e) = match t.split_once('*') {
            None => (t, 0),
            Some((label, power)) => (label, parse_power(power)?),
        };
        let c = ring
            .lookup(label)
            .ok_or_else(|| ParseError::UnknownLabel(label.to_string()))?;
        out.push((e, c));
    }
    Ok(out)
}

fn parse_power(power: &str) -> Result<i64, ParseError> {
    let bad = || ParseError::BadPower(power.to_string());
    match power.strip_prefix('x') {
        Some("") => Ok(1),
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|k| k.parse::<i64>().ok())
            .ok_or_else(bad),
        None => Err(bad()),
    }
}
