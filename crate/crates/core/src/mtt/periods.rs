use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::reconstruct::reconstruct;
use crate::error::{Error, Result};
use crate::tate::{an_table, semistable_root_number, CurveData};

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let (na, nb) = ((a + b) / 2.0, (a * b).sqrt());
        if (na - nb).abs() <= 1e-16 * na {
            return na;
        }
        a = na;
        b = nb;
    }
    a
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().expect("invariant fits in f64")
}

/// Roots of `4x^3 + b2 x^2 + 2 b4 x + b6` as `(e1, [(re, im); 2])`: for
/// `Delta > 0` all three are real and `e1` is the largest, otherwise `e1` is
/// the only real root.
fn cubic_roots(e: &CurveData) -> (f64, [(f64, f64); 2]) {
    let inv = e.invariants();
    let c = [4.0, to_f64(&inv.b2), 2.0 * to_f64(&inv.b4), to_f64(&inv.b6)];
    let f = |x: f64| ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
    let bound = 1.0 + c[1..].iter().map(|v| v.abs() / 4.0).fold(0.0, f64::max);
    // f(-bound) < 0 < f(bound); bisect to a real root
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    // deflate: 4x^3 + ... = (x - e1)(4x^2 + q1 x + q0)
    let q1 = c[1] + 4.0 * x;
    let q0 = c[2] + q1 * x;
    let disc = q1 * q1 - 16.0 * q0;
    if e.discriminant().is_positive() {
        let s = disc.max(0.0).sqrt();
        let mut r = [x, (-q1 + s) / 8.0, (-q1 - s) / 8.0];
        r.sort_by(|a, b| b.total_cmp(a));
        return (r[0], [(r[1], 0.0), (r[2], 0.0)]);
    }
    let s = (-disc).max(0.0).sqrt();
    (x, [(-q1 / 8.0, s / 8.0), (-q1 / 8.0, -s / 8.0)])
}

/// Least positive real period of `dx / (2y + a1 x + a3)`.
pub fn real_period(e: &CurveData) -> f64 {
    let (e1, pair) = cubic_roots(e);
    if e.discriminant().is_positive() {
        let e2 = pair[0].0.max(pair[1].0);
        let e3 = pair[0].0.min(pair[1].0);
        PI / agm((e1 - e3).sqrt(), (e1 - e2).sqrt())
    } else {
        let (re, im) = pair[0];
        let r = ((e1 - re).powi(2) + im * im).sqrt();
        PI / agm(r.sqrt(), ((r + e1 - re) / 2.0).sqrt())
    }
}

/// Number of connected components of `E(R)`.
pub fn real_components(e: &CurveData) -> u32 {
    if e.discriminant().is_positive() {
        2
    } else {
        1
    }
}

/// `Omega^+`: the least positive real period times the number of real
/// components.
pub fn omega_plus(e: &CurveData) -> f64 {
    real_period(e) * real_components(e) as f64
}

/// `L(E, 1)` by the smoothed sum
/// `sum a_n/n (exp(-2 pi n t/sqrt N) + w exp(-2 pi n/(t sqrt N)))` at `t = 1`.
pub fn l_value_at_1(e: &CurveData) -> Result<f64> {
    let n = e.conductor()? as f64;
    let w = semistable_root_number(e) as f64;
    let x = 2.0 * PI / n.sqrt();
    let nmax = (40.0 / x).ceil() as usize + 1;
    let an = an_table(e, nmax);
    let mut s = 0.0;
    for (k, a) in an.iter().enumerate().skip(1) {
        let d = (-x * k as f64).exp();
        s += *a as f64 / k as f64 * d * (1.0 + w);
    }
    Ok(s)
}

/// `L(E,1)/Omega^+` as an exact rational.
pub fn l_ratio(e: &CurveData) -> Result<BigRational> {
    let v = l_value_at_1(e)? / omega_plus(e);
    reconstruct(v, 10_000, 1e-9).map_err(|err| match err {
        Error::Precision(m) => Error::Precision(format!("L(E,1)/Omega^+ = {v}: {m}")),
        other => other,
    })
}
