use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::codec::CodeSpec;
use crate::error::{Error, Result};
use crate::nfcore::{FieldElement, NumberField};

/// One entry of `code.json`: the prime `(p, θ − root)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub p: u64,
    pub root: u64,
}

/// On-disk form of a code: `{"poly": [...], "primes": [{"p", "root"}...], "k"}`,
/// with `poly` ascending and monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub poly: Vec<i64>,
    pub primes: Vec<PrimeEntry>,
    pub k: usize,
}

impl CodeFile {
    pub fn to_spec(&self) -> Result<CodeSpec> {
        let field = NumberField::from_i64(&self.poly)?;
        let pairs: Vec<(u64, u64)> = self.primes.iter().map(|e| (e.p, e.root)).collect();
        CodeSpec::from_pairs(field, &pairs, self.k)
    }

    /// Fails if a polynomial coefficient does not fit in an `i64`.
    pub fn from_spec(code: &CodeSpec) -> Result<Self> {
        let poly = code
            .field()
            .poly()
            .iter()
            .map(|c| i64::try_from(c).map_err(|_| Error::Parse(format!("coefficient {c} does not fit in i64"))))
            .collect::<Result<_>>()?;
        let primes = code.primes().iter().map(|p| PrimeEntry { p: p.p, root: p.root }).collect();
        Ok(Self { poly, primes, k: code.k() })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code file serializes")
    }
}

/// Parses a message literal: either a coordinate array `[a0, a1, ...]` or a
/// sum of terms such as `3+2*t`, `-t^2+5`, `(1+t)/2`. Powers of `t` at or
/// above the degree are reduced in the field.
pub fn parse_message(k: &NumberField, s: &str) -> Result<FieldElement> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty message".into()));
    }
    if s.starts_with('[') {
        return parse_array(k, &s);
    }
    if let Some(rest) = s.strip_prefix('(') {
        let (inner, den) = rest.rsplit_once(")/").ok_or_else(|| Error::Parse(format!("malformed fraction `{s}`")))?;
        let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad denominator `{den}`")))?;
        if den == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        let x = parse_sum(k, inner)?;
        return Ok(FieldElement::new(x.coords().to_vec(), x.denom() * den));
    }
    parse_sum(k, &s)
}

fn parse_array(k: &NumberField, s: &str) -> Result<FieldElement> {
    let vals: Vec<serde_json::Value> = serde_json::from_str(s)?;
    if vals.len() > k.degree() {
        return Err(Error::DimensionMismatch { expected: k.degree(), got: vals.len() });
    }
    let mut coords = vec![BigInt::from(0); k.degree()];
    for (c, v) in coords.iter_mut().zip(&vals) {
        let txt = match v {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s.clone(),
            _ => return Err(Error::Parse(format!("bad coordinate {v}"))),
        };
        *c = txt.parse().map_err(|_| Error::Parse(format!("bad coordinate {txt}")))?;
    }
    Ok(FieldElement::integral(coords))
}

fn parse_sum(k: &NumberField, s: &str) -> Result<FieldElement> {
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut acc = k.zero();
    for term in terms {
        acc = &acc + &parse_term(k, term)?;
    }
    Ok(acc)
}

fn parse_term(k: &NumberField, term: &str) -> Result<FieldElement> {
    let bad = || Error::Parse(format!("bad term `{term}`"));
    let (neg, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coef, exp) = match body.find(['t', 'θ']) {
        None => (body, 0u64),
        Some(pos) => {
            let var_len = body[pos..].chars().next().unwrap().len_utf8();
            let coef = body[..pos].trim_end_matches('*');
            let tail = &body[pos + var_len..];
            let exp = match tail.strip_prefix('^') {
                Some(e) => e.parse().map_err(|_| bad())?,
                None if tail.is_empty() => 1,
                None => return Err(bad()),
            };
            (if coef.is_empty() { "1" } else { coef }, exp)
        }
    };
    let mut c: BigInt = coef.parse().map_err(|_| bad())?;
    if neg {
        c = -c;
    }
    Ok(k.pow(&k.theta(), exp).scale_int(&c))
}
