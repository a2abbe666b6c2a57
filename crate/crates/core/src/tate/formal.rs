use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::curve::{CurveData, Point};
use super::reduction::check_split_multiplicative;
use crate::error::{domain, Error, Result};
use crate::padic::{val_rat, Padic};

fn mul_trunc(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn inv_trunc(a: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    let c0 = a[0].recip();
    out[0] = c0.clone();
    for n in 1..len {
        let mut s = BigRational::zero();
        for k in 1..=n.min(a.len() - 1) {
            s += &a[k] * &out[n - k];
        }
        out[n] = -(s * &c0);
    }
    out
}

/// Coefficients `c_n` of the invariant differential `omega = sum c_n t^(n-1) dt`
/// in the parameter `t = -x/y`, for `n = 1..=degree`.
///
/// `w(t) = -1/y` is obtained by iterating
/// `w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3`; then with
/// `V = t^3/w` one has `omega/dt = (-2V + tV') / (-2V + a1 t V + a3 t^3)`.
pub fn differential_coefficients(e: &CurveData, degree: usize) -> Vec<BigRational> {
    let [a1, a2, a3, a4, a6] = e.a().clone().map(BigRational::from_integer);
    let len = degree + 4;
    // W(t) = w/t^3, a power series with W(0) = 1:
    // W = 1 + a1 t W + a2 t^2 W + a3 t^3 W^2 + a4 t^4 W^2 + a6 t^6 W^3
    let mut w = vec![BigRational::zero(); len];
    w[0] = BigRational::one();
    for _ in 0..len {
        let w2 = mul_trunc(&w, &w, len);
        let w3 = mul_trunc(&w2, &w, len);
        let mut next = vec![BigRational::zero(); len];
        next[0] = BigRational::one();
        for i in 0..len {
            if i + 1 < len {
                next[i + 1] += &a1 * &w[i];
            }
            if i + 2 < len {
                next[i + 2] += &a2 * &w[i];
            }
            if i + 3 < len {
                next[i + 3] += &a3 * &w2[i];
            }
            if i + 4 < len {
                next[i + 4] += &a4 * &w2[i];
            }
            if i + 6 < len {
                next[i + 6] += &a6 * &w3[i];
            }
        }
        if next == w {
            break;
        }
        w = next;
    }
    let v = inv_trunc(&w, len);
    let two = BigRational::from_integer(2.into());
    // numerator -2V + tV'
    let num: Vec<BigRational> = (0..len)
        .map(|i| -(&two * &v[i]) + BigRational::from_integer(BigInt::from(i)) * &v[i])
        .collect();
    let mut den: Vec<BigRational> = v.iter().map(|c| -(&two * c)).collect();
    for i in 0..len {
        if i + 1 < len {
            den[i + 1] += &a1 * &v[i];
        }
    }
    if 3 < len {
        den[3] += &a3;
    }
    let om = mul_trunc(&num, &inv_trunc(&den, len), len);
    om.into_iter().take(degree).collect()
}

/// `hat-l(t) = sum_{n>=1} c_n t^n / n` at a p-adic `t` with `ord_p(t) >= 1`.
pub fn formal_log_series(coeffs: &[BigRational], t: &Padic) -> Padic {
    let p = t.prime();
    let mut acc = Padic::exact_zero(p);
    let mut tn = t.clone();
    for (i, c) in coeffs.iter().enumerate() {
        let n = i as i64 + 1;
        if !c.is_zero() {
            let term = &tn * &Padic::exact(p, c / BigRational::from_integer(BigInt::from(n)));
            acc = &acc + &term;
        }
        tn = &tn * t;
    }
    acc
}

/// `log_A(P)` on `E(Q_p)` for a rational point `P` at a split multiplicative `p`.
///
/// Finds the least `M` with `M P` in the kernel of reduction, evaluates the
/// formal logarithm at `t = -x/y` of `M P` and divides by `M`. Torsion points
/// (including `O`) give exact zero.
pub fn formal_log(e: &CurveData, p: u64, pt: &Point, precision: i64) -> Result<Padic> {
    e.validate_point(pt)?;
    if e.torsion_order(pt).is_some() {
        return Ok(Padic::exact_zero(p));
    }
    let check = check_split_multiplicative(e, p);
    if !check.split {
        return domain(format!("{}: {}", e.label(), check.diagnostic));
    }
    let cp = crate::padic::val_int(e.discriminant(), p);
    let bound = cp * (p as i64 - 1);
    let mut q = pt.clone();
    let mut m = 1i64;
    loop {
        if let Point::Affine(x, _) = &q {
            if val_rat(x, p) < 0 {
                break;
            }
        }
        if m >= bound {
            return Err(Error::Validation(format!("no multiple up to {bound} reduces to the identity")));
        }
        m += 1;
        q = e.add_points(&q, pt);
    }
    let Point::Affine(x, y) = &q else { unreachable!("non-torsion multiple") };
    let t = Padic::exact(p, -(x / y));
    let vt = t.valuation();
    let degree = (2 * precision / vt + 8) as usize;
    let coeffs = differential_coefficients(e, degree);
    let val = formal_log_series(&coeffs, &t.with_prec(precision + 4)).with_prec(precision);
    Ok(val.div_int(m))
}
