use crate::error::{domain, Error, Result};
use crate::padic::{binomial, CyclotomicElement, Padic};

use super::series::PowerSeriesZp;

/// `f(zeta (1 + T) - 1)` over `Q_p(mu_p)`, to degree `d`.
///
/// With `a = zeta - 1` the coefficient of `T^m` is
/// `zeta^m sum_j f_j C(j, m) a^(j-m)`; `a^(p-1)` is divisible by `p`, so the
/// unknown tail of `f` costs `floor((D - m)/(p - 1))` digits at `T^m`.
fn twisted(f: &PowerSeriesZp, i: u64, d: usize) -> Vec<CyclotomicElement> {
    let p = f.prime();
    let big_d = f.degree();
    let zeta_i = CyclotomicElement::zeta_pow(p, 0, i as i64);
    let a = zeta_i.sub_ref(&CyclotomicElement::one(p, 0));
    let mut apow = vec![CyclotomicElement::one(p, 0)];
    for k in 1..big_d {
        let next = apow[k - 1].mul_ref(&a);
        apow.push(next);
    }
    let base = f.min_valuation().min(0);
    (0..d)
        .map(|m| {
            let mut s = CyclotomicElement::zero(p, 0);
            for j in m..big_d {
                let c = f.coeff(j);
                if c.is_exact_zero() {
                    continue;
                }
                let w = c * &binomial(&Padic::exact_int(p, j as i64), m);
                s = s.add_ref(&apow[j - m].scale(&w));
            }
            let s = s.mul_ref(&CyclotomicElement::zeta_pow(p, 0, (i as i64) * m as i64));
            if f.is_polynomial() || i == 0 {
                s
            } else {
                s.with_prec((big_d - m) as i64 / (p as i64 - 1) + base)
            }
        })
        .collect()
}

fn mul_cyc(a: &[CyclotomicElement], b: &[CyclotomicElement]) -> Vec<CyclotomicElement> {
    let d = a.len().min(b.len());
    let p = a[0].prime();
    let mut out = vec![CyclotomicElement::zero(p, 0); d];
    for i in 0..d {
        if a[i].is_zero() && a[i].prec() == crate::padic::EXACT {
            continue;
        }
        for j in 0..d - i {
            out[i + j] = out[i + j].add_ref(&a[i].mul_ref(&b[j]));
        }
    }
    out
}

/// Coleman's norm operator: the series `Nf` with
/// `(Nf)((1 + T)^p - 1) = prod_{zeta^p = 1} f(zeta (1 + T) - 1)`.
///
/// The product is formed with coefficients in `Z_p[mu_p]`, where it must come
/// out Galois-invariant (checked), and is then rewritten in the variable
/// `phi(T) = (1 + T)^p - 1` by back-substitution. The leading term of
/// `phi(T)^j` is `p^j T^j`, so the `T^j` coefficient of `Nf` loses `j`
/// digits; `out_degree` is usually well below the input degree.
pub fn coleman_norm_operator(f: &PowerSeriesZp, out_degree: usize) -> Result<PowerSeriesZp> {
    let p = f.prime();
    if !f.is_unit() {
        return domain(format!("norm operator needs a unit series, f(0) = {}", f.coeff(0)));
    }
    let d = out_degree.min(f.degree()).max(1);
    let mut prod = twisted(f, 0, d);
    for i in 1..p {
        prod = mul_cyc(&prod, &twisted(f, i, d));
    }
    let mut scalars = Vec::with_capacity(d);
    for (m, c) in prod.iter().enumerate() {
        match c.scalar_value() {
            Some(v) => scalars.push(v.clone()),
            None => {
                return Err(Error::Precision(format!(
                    "product over mu_p not Galois-invariant at T^{m}; raise the input degree or precision"
                )))
            }
        }
    }
    let phi = PowerSeriesZp::one_plus_x_pow(&Padic::exact_int(p, p as i64), d).sub_ref(&PowerSeriesZp::one(p, d));
    let mut phi_pows = vec![PowerSeriesZp::one(p, d)];
    for j in 1..d {
        let next = phi_pows[j - 1].mul_ref(&phi);
        phi_pows.push(next);
    }
    let mut out: Vec<Padic> = Vec::with_capacity(d);
    for j in 0..d {
        let mut r = scalars[j].clone();
        for (i, c) in out.iter().enumerate() {
            r = &r - &(c * phi_pows[i].coeff(j));
        }
        out.push(r.try_div(phi_pows[j].coeff(j))?);
    }
    PowerSeriesZp::new(p, out)
}
