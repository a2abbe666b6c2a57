//! Canonical text form: `a_0 + a_1*p + a_2*p^2 + ... + O(p^N)`.
//!
//! Digits satisfy `0 <= a_i < p`, zero digits are omitted and `p` is written
//! as its decimal value, e.g. `1 + 3*5^2 + O(5^4)`. Exact values print as a
//! plain rational (`-3/4`) and have no `O(...)` term.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::number::{ppow, Padic};
use crate::error::{Error, Result};

fn term(p: u64, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => format!("{p}"),
        _ => format!("{p}^{e}"),
    }
}

pub(crate) fn write_padic(x: &Padic, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Some(r) = x.as_exact() {
        return write!(f, "{r}");
    }
    let p = x.prime();
    let (v, digits) = x.digits();
    let mut parts = Vec::new();
    for (i, d) in digits.iter().enumerate() {
        if *d == 0 {
            continue;
        }
        let e = v + i as i64;
        parts.push(if e == 0 { format!("{d}") } else { format!("{d}*{}", term(p, e)) });
    }
    let n = x.prec();
    parts.push(if n == 0 { format!("O({p}^0)") } else { format!("O({})", term(p, n)) });
    write!(f, "{}", parts.join(" + "))
}

fn parse_power(s: &str) -> Result<(u64, i64)> {
    let bad = || Error::Parse(format!("bad power of p: {s:?}"));
    match s.split_once('^') {
        Some((b, e)) => Ok((b.trim().parse().map_err(|_| bad())?, e.trim().parse().map_err(|_| bad())?)),
        None => Ok((s.trim().parse().map_err(|_| bad())?, 1)),
    }
}

/// Parse the canonical form. `p` is inferred from the `O(...)` term, or must
/// be supplied for exact values via [`parse_padic`].
pub fn parse_padic(s: &str, p: Option<u64>) -> Result<Padic> {
    let s = s.trim();
    if !s.contains("O(") {
        let p = p.ok_or_else(|| Error::Parse("exact value needs an explicit prime".into()))?;
        let r = BigRational::from_str(s).map_err(|_| Error::Parse(format!("bad rational: {s:?}")))?;
        return Ok(Padic::exact(p, r));
    }
    let mut terms: Vec<&str> = s.split('+').map(str::trim).collect();
    let last = terms.pop().unwrap();
    let inner = last
        .strip_prefix("O(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected O(p^N) as last term, got {last:?}")))?;
    let (prime, n) = if inner.trim() == "1" {
        (p.ok_or_else(|| Error::Parse("O(1) needs an explicit prime".into()))?, 0)
    } else {
        parse_power(inner)?
    };
    if let Some(q) = p {
        if q != prime {
            return Err(Error::Parse(format!("prime mismatch: {q} vs {prime}")));
        }
    }
    let mut lo = i64::MAX;
    let mut pairs = Vec::new();
    for t in terms {
        let (d, e) = match t.split_once('*') {
            Some((d, pw)) => {
                let (b, e) = parse_power(pw)?;
                if b != prime {
                    return Err(Error::Parse(format!("term {t:?} uses base {b}, expected {prime}")));
                }
                (d, e)
            }
            None => (t, 0),
        };
        let d: u64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad digit in {t:?}")))?;
        if d >= prime {
            return Err(Error::Parse(format!("digit {d} out of range for p = {prime}")));
        }
        if e >= n {
            return Err(Error::Parse(format!("term {t:?} beyond precision {n}")));
        }
        lo = lo.min(e);
        pairs.push((d, e));
    }
    if pairs.is_empty() {
        return Ok(Padic::zero_to(prime, n));
    }
    let mut x = BigInt::zero();
    for (d, e) in pairs {
        x += BigInt::from(d) * ppow(prime, e - lo);
    }
    Ok(Padic::from_scaled(prime, lo, x, n))
}

impl FromStr for Padic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Padic> {
        parse_padic(s, None)
    }
}
