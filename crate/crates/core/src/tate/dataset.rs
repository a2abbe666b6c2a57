use std::str::FromStr;

use num_rational::BigRational;

use super::curve::CurveData;
use crate::error::{Error, Result};

/// Built-in table of split multiplicative `(curve, p)` pairs.
pub const BUILTIN: &str = include_str!("../../data/curves.txt");

/// One dataset record: `label [a1,a2,a3,a4,a6] p [sign]`.
///
/// The optional trailing sign is the root number of the curve over Q, needed
/// by the functional-equation check.
#[derive(Clone, Debug)]
pub struct CurveRecord {
    pub curve: CurveData,
    pub p: u64,
    pub sign: Option<i64>,
    /// Line number in the source (1-based).
    pub line: usize,
}

impl CurveRecord {
    pub fn label(&self) -> &str {
        self.curve.label()
    }
}

fn parse_line(line: &str, lineno: usize) -> Result<Option<CurveRecord>> {
    let err = |msg: String| Error::Dataset { line: lineno, msg };
    let body = line.split('#').next().unwrap_or("").trim();
    if body.is_empty() {
        return Ok(None);
    }
    let open = body.find('[').ok_or_else(|| err("missing '['".into()))?;
    let close = body.find(']').ok_or_else(|| err("missing ']'".into()))?;
    if close < open {
        return Err(err("']' before '['".into()));
    }
    let label = body[..open].trim();
    if label.is_empty() || label.contains(char::is_whitespace) {
        return Err(err(format!("bad label {label:?}")));
    }
    let coeffs: Vec<&str> = body[open + 1..close].split(',').map(str::trim).collect();
    if coeffs.len() != 5 {
        return Err(err(format!("expected 5 a-invariants, got {}", coeffs.len())));
    }
    let mut a: Vec<BigRational> = Vec::with_capacity(5);
    for c in coeffs {
        a.push(BigRational::from_str(c).map_err(|_| err(format!("malformed rational {c:?}")))?);
    }
    let rest: Vec<&str> = body[close + 1..].split_whitespace().collect();
    if rest.is_empty() || rest.len() > 2 {
        return Err(err("expected `p` and optional sign after the a-invariants".into()));
    }
    let p: u64 = rest[0].parse().map_err(|_| err(format!("bad prime {:?}", rest[0])))?;
    let sign = match rest.get(1) {
        None => None,
        Some(s) => match s.trim_start_matches('+') {
            "1" => Some(1),
            "-1" => Some(-1),
            _ => return Err(err(format!("sign must be +1 or -1, got {s:?}"))),
        },
    };
    let a: [BigRational; 5] = a.try_into().expect("five entries");
    let curve = CurveData::from_rationals(label, a).map_err(|e| err(e.to_string()))?;
    Ok(Some(CurveRecord { curve, p, sign, line: lineno }))
}

/// Parse records without validating the reduction type.
pub fn parse_records(text: &str) -> Result<Vec<CurveRecord>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(r) = parse_line(line, i + 1)? {
            out.push(r);
        }
    }
    Ok(out)
}

impl std::fmt::Display for CurveRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.curve, self.p)?;
        if let Some(s) = self.sign {
            write!(f, " {s:+}")?;
        }
        Ok(())
    }
}
