use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::number::{ppow, Padic};
use crate::error::{domain, Error, Result};

/// Precision used when a transcendental function receives an exact argument
/// and no cap is given.
pub const DEFAULT_PREC: i64 = 30;

/// Iwasawa logarithm: `log_p(p) = 0` and Teichmüller parts are killed.
pub fn padic_log(u: &Padic) -> Result<Padic> {
    padic_log_prec(u, DEFAULT_PREC)
}

/// As [`padic_log`], with `cap` used as the working precision when `u` is exact.
///
/// The output is known modulo `p^(N - v)` where `N` is the absolute precision
/// of `u` and `v` its valuation (the relative precision is preserved).
pub fn padic_log_prec(u: &Padic, cap: i64) -> Result<Padic> {
    let p = u.prime();
    if u.is_exact_zero() {
        return domain("log of exact zero");
    }
    if u.is_zero() {
        return domain(format!("log of zero modulo {p}^{}", u.prec()));
    }
    let mut w = u.unit_part()?;
    if let Some(r) = w.as_exact() {
        if r.is_one() || (-r).is_one() {
            return Ok(Padic::exact_zero(p));
        }
        w = w.with_prec(cap);
    }
    let n = w.prec();
    let y = w.pow(p as i64 - 1) - Padic::one(p);
    if y.is_zero() {
        return Ok(Padic::zero_to(p, n));
    }
    let vy = y.valuation();
    debug_assert!(vy >= 1);
    let mut sum = Padic::zero_to(p, n);
    let mut yk = y.clone();
    let mut k: u64 = 1;
    loop {
        let term = yk.div_int(k as i64);
        sum = if k % 2 == 1 { sum + term } else { sum - term };
        k += 1;
        // j*vy - v_p(j) is bounded below by k*vy - ceil(log_p k) for j >= k
        if k as i64 * vy - ceil_log(k, p) >= n {
            break;
        }
        yk = &yk * &y;
    }
    Ok(sum.div_int(p as i64 - 1).with_prec(n))
}

fn ceil_log(k: u64, p: u64) -> i64 {
    let mut e = 0;
    let mut q = 1u64;
    while q < k {
        q = q.saturating_mul(p);
        e += 1;
    }
    e
}

/// p-adic exponential on `ord_p(x) >= 1`.
pub fn padic_exp(x: &Padic) -> Result<Padic> {
    padic_exp_prec(x, DEFAULT_PREC)
}

pub fn padic_exp_prec(x: &Padic, cap: i64) -> Result<Padic> {
    let p = x.prime();
    if x.is_exact_zero() {
        return Ok(Padic::one(p));
    }
    let x = if x.is_exact() { x.with_prec(cap) } else { x.clone() };
    let n = x.prec();
    if x.is_zero() {
        return Ok(Padic::one(p).with_prec(n));
    }
    let v = x.valuation();
    if v < 1 {
        return Err(Error::Convergence(format!("exp needs ord_p(x) >= 1, got {v}")));
    }
    let mut sum = Padic::one(p).with_prec(n);
    let mut term = Padic::one(p);
    let mut k: i64 = 1;
    loop {
        term = (&term * &x).div_int(k);
        sum = &sum + &term;
        k += 1;
        // v(x^k/k!) >= k*v - (k-1)/(p-1)
        if k * v - (k - 1) / (p as i64 - 1) >= n {
            break;
        }
    }
    Ok(sum.with_prec(n))
}

/// Teichmüller representative of an integer `a` prime to `p`, modulo `p^n`.
pub fn teichmuller(a: &BigInt, p: u64, n: i64) -> Result<Padic> {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return domain(format!("teichmuller: {p} divides {a}"));
    }
    if r.is_one() {
        return Ok(Padic::one(p));
    }
    if r == &pb - 1u32 {
        return Ok(Padic::exact_int(p, -1));
    }
    let m = ppow(p, n);
    let mut x = r;
    for _ in 0..n {
        x = x.modpow(&pb, &m);
    }
    Ok(Padic::from_int(p, x, n))
}

/// Teichmüller representative of a p-adic unit, at the unit's precision (or
/// `DEFAULT_PREC` for exact input).
pub fn teichmuller_of(x: &Padic) -> Result<Padic> {
    if x.valuation() != 0 {
        return domain("teichmuller of a non-unit");
    }
    let n = if x.is_exact() { DEFAULT_PREC } else { x.prec() };
    let r = x.residue(1).ok_or_else(|| Error::Precision("unit not known mod p".into()))?;
    teichmuller(&r, x.prime(), n)
}

/// Principal-unit part `<x> = x / omega(x)` of a unit.
pub fn one_unit(x: &Padic) -> Result<Padic> {
    let w = teichmuller_of(x)?;
    x.try_div(&w)
}

/// Binomial coefficient `x (x-1) ... (x-j+1) / j!` for p-adic `x`.
pub fn binomial(x: &Padic, j: usize) -> Padic {
    let p = x.prime();
    let mut acc = Padic::one(p);
    for i in 0..j {
        acc = &acc * &(x - &Padic::exact_int(p, i as i64));
        acc = acc.div_int(i as i64 + 1);
    }
    acc
}

/// `<a>` for an integer `a` prime to `p`, as a principal unit mod `p^n`.
pub fn one_unit_int(a: &BigInt, p: u64, n: i64) -> Result<Padic> {
    let w = teichmuller(a, p, n)?;
    Padic::from_int(p, a.clone(), n).try_div(&w)
}

/// `log_p(1 + p)` to precision `n`.
pub fn log_one_plus_p(p: u64, n: i64) -> Padic {
    padic_log_prec(&Padic::from_int(p, BigInt::from(p + 1), n), n).expect("1+p is a unit")
}
