use num_bigint::BigInt;
use num_rational::BigRational;

use super::jet::{exp_minus_one, Jet2};
use super::pairing::{hw_pairing, Class, PairingTable};
use super::scalar::{Scalar, Sym};
use crate::error::{domain, Error, Result};
use crate::padic::Padic;
use crate::tate::TateCurveData;

/// `(1/ord_p q_A) (1 - 1/p)^-1`, the constant in front of both Rubin-type
/// formulae.
pub fn rubin_prefactor(t: &TateCurveData) -> Result<Padic> {
    if t.ord_q == 0 {
        return domain("ord_p(q_A) = 0");
    }
    let p = t.p as i64;
    Ok(Padic::exact(t.p, BigRational::new(BigInt::from(p), BigInt::from(t.ord_q * (p - 1)))))
}

/// The same constant with `ord_q` and `e := 1 - 1/p` kept as indeterminates.
pub fn rubin_prefactor_symbolic() -> Sym {
    let inv = |n: &str| Sym::var(n).inverse().expect("monomials are units");
    inv("ord_q").times(&inv("e"))
}

/// `log_p(q_A)` from the Tate data, as `L_p(A) ord_p(q_A)`.
pub fn log_q(t: &TateCurveData) -> Padic {
    t.l_invariant.mul_int(t.ord_q)
}

/// First-order jet of the big dual exponential at a class with
/// `exp^* = exp_star`: `prefactor exp^* <q_A,q_A>` in `J/J^2`.
pub fn rubin_jet<S: Scalar>(exp_star: &S, prefactor: &S, table: &PairingTable<S>) -> Result<Jet2<S>> {
    Ok(hw_pairing(&Class::Q, &Class::Q, table)?.scale(&prefactor.times(exp_star)).truncate(1))
}

/// [`rubin_jet`] with numbers from the Tate curve.
pub fn rubin_jet_from_tate(exp_star: &Padic, t: &TateCurveData, order: usize) -> Result<Jet2<Padic>> {
    let table = PairingTable::new(log_q(t)).with_order(order);
    rubin_jet(exp_star, &rubin_prefactor(t)?, &table)
}

/// Second-order version: solves `lambda L = -prefactor h` for `L` in
/// `J^2/J^3`, with `h` an extended height-weight.
pub fn rubin_jet_squared<S: Scalar>(lambda: &S, h: &Jet2<S>, prefactor: &S) -> Result<Jet2<S>> {
    let inv = lambda.inverse().ok_or_else(|| Error::Domain(format!("log of the class is {lambda}, not invertible")))?;
    Ok(h.truncate(2).scale(&prefactor.times(&inv).negated()))
}

/// Linear model of `1 - a_p(k)^-1` at `k = 2`: `-L_p(A)/2 (k-2)`.
pub fn euler_factor_jet<S: Scalar>(l_inv: &S, order: usize) -> Jet2<S> {
    let h = l_inv.embed(&BigRational::new(BigInt::from(-1), BigInt::from(2)));
    Jet2::k(l_inv, order).scale(&l_inv.times(&h))
}

/// Divide the one-variable jet of `L_p(f, k, 1)` by the jet of the Euler
/// factor, giving the jet of the improved function to one order less.
pub fn improved_factor<S: Scalar>(jet_l: &Jet2<S>, divisor: &Jet2<S>) -> Result<Jet2<S>> {
    if !jet_l.is_in_k_only() || !divisor.is_in_k_only() {
        return domain("improved_factor needs jets restricted to s = 1");
    }
    let a0 = jet_l.coeff(0, 0);
    if !a0.is_zero_value() {
        return Err(Error::Validation(format!("constant term {a0} is nonzero: no exceptional zero to factor")));
    }
    if !divisor.coeff(0, 0).is_zero_value() {
        return domain("the divisor must vanish at k = 2");
    }
    let b1 = divisor.coeff(1, 0);
    let inv = b1.inverse().ok_or_else(|| Error::Domain(format!("divisor slope {b1} is not invertible")))?;
    let d = jet_l.order().min(divisor.order());
    let mut c: Vec<S> = Vec::with_capacity(d);
    for i in 0..d {
        let mut r = jet_l.coeff(i + 1, 0);
        for m in 1..=i {
            r = r.minus(&divisor.coeff(m + 1, 0).times(&c[i - m]));
        }
        c.push(r.times(&inv));
    }
    Ok(Jet2::from_coeffs(jet_l.template(), d - 1, c.into_iter().enumerate().map(|(i, v)| ((i, 0), v))))
}

/// Mellin transform at `k = 2`: a polynomial in `varpi = gamma_0 - 1`
/// (first slot) and `varsigma = sigma_0 - 1` (second slot) goes to the jet
/// with `varpi -> exp((k-2) log gamma_0) - 1` and
/// `varsigma -> exp((s-1) log chi(sigma_0)) - 1`.
pub fn mellin_jet<S: Scalar>(poly: &Jet2<S>, log_gamma0: &S, log_chi_sigma0: &S) -> Result<Jet2<S>> {
    let d = poly.order();
    let t = poly.template();
    let ku = exp_minus_one(&Jet2::k(t, d).scale(log_gamma0))?;
    let su = exp_minus_one(&Jet2::s(t, d).scale(log_chi_sigma0))?;
    poly.substitute(&ku, &su)
}

/// `<N>^((s-1)/2) = exp((s-1)/2 log <N>)`: the functional-equation factor
/// `<N>^(s/2)` divided by its value at `s = 1`.
pub fn fe_prefactor_jet<S: Scalar>(log_n: &S, order: usize) -> Jet2<S> {
    let h = log_n.embed(&BigRational::new(BigInt::from(1), BigInt::from(2)));
    let x = Jet2::s(log_n, order).scale(&log_n.times(&h));
    Jet2::constant(log_n.one_like(), order).add(&exp_minus_one(&x).expect("x lies in J"))
}

/// `G(s) + sign G(2-s)` with `G = <N>^((s-1)/2) L_p(s)`, for a jet of
/// `L_p(A, s)` in `s - 1`; zero when the functional equation holds.
pub fn fe_residual<S: Scalar>(lp: &Jet2<S>, log_n: &S, sign: i64) -> Result<Jet2<S>> {
    if !lp.is_in_s_only() {
        return domain("expected a jet in s - 1 only");
    }
    let g = fe_prefactor_jet(log_n, lp.order()).mul(lp);
    // at k = 2, s -> k - s is s -> 2 - s
    let g2 = g.reflect().at_weight_two();
    Ok(g.add(&g2.scale(&log_n.embed_int(sign))))
}

/// Jet in `s - 1` from Taylor coefficients `c_j` of `sum c_j (s-1)^j`.
pub fn s_jet<S: Scalar>(template: &S, coeffs: &[S]) -> Jet2<S> {
    let d = coeffs.len().saturating_sub(1);
    Jet2::from_coeffs(template, d, coeffs.iter().cloned().enumerate().map(|(j, c)| ((0, j), c)))
}
