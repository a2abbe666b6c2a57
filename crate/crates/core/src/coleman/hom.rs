use num_bigint::BigInt;
use num_rational::BigRational;

use super::interp::l_sigma;
use crate::error::{domain, Result};
use crate::padic::{log_one_plus_p, one_unit, padic_log_prec, Padic};
use crate::tate::TateCurveData;

/// A continuous homomorphism `Q_p^* -> Q_p`, fixed by its values on `p` and
/// on `1 + p` (it kills the roots of unity).
///
/// Every such map is `a log_p + b ord_p` with `b = phi(p)` and
/// `a = phi(1 + p)/log_p(1 + p)`, `log_p` on the Iwasawa branch.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalHomClass {
    pub on_p: Padic,
    pub on_one_plus_p: Padic,
}

impl LocalHomClass {
    pub fn new(on_p: Padic, on_one_plus_p: Padic) -> Result<Self> {
        if on_p.prime() != on_one_plus_p.prime() {
            return domain("values over different primes");
        }
        Ok(LocalHomClass { on_p, on_one_plus_p })
    }

    pub fn prime(&self) -> u64 {
        self.on_p.prime()
    }

    /// `log_p` (with `log_p(p) = 0`).
    pub fn log_p(p: u64, prec: i64) -> Self {
        LocalHomClass { on_p: Padic::exact_zero(p), on_one_plus_p: log_one_plus_p(p, prec) }
    }

    pub fn ord_p(p: u64) -> Self {
        LocalHomClass { on_p: Padic::one(p), on_one_plus_p: Padic::exact_zero(p) }
    }

    /// `log_{q_A} = log_p - L_p(A) ord_p`, the branch killing the Tate period.
    pub fn branch_log(t: &TateCurveData) -> Self {
        let prec = t.l_invariant.prec().min(t.q.prec());
        LocalHomClass { on_p: -&t.l_invariant, on_one_plus_p: log_one_plus_p(t.p, prec) }
    }

    /// `a log_p + b ord_p`.
    pub fn compose(a: &Padic, b: &Padic, prec: i64) -> Self {
        let p = a.prime();
        LocalHomClass { on_p: b.clone(), on_one_plus_p: a * &log_one_plus_p(p, prec) }
    }

    /// `(a, b)` with `self = a log_p + b ord_p`.
    pub fn decompose(&self) -> Result<(Padic, Padic)> {
        let p = self.prime();
        let n = working_prec(&self.on_one_plus_p);
        let a = self.on_one_plus_p.try_div(&log_one_plus_p(p, n + 1))?;
        Ok((a, self.on_p.clone()))
    }

    pub fn scale(&self, c: &Padic) -> Self {
        LocalHomClass { on_p: &self.on_p * c, on_one_plus_p: &self.on_one_plus_p * c }
    }

    pub fn add(&self, o: &Self) -> Self {
        LocalHomClass { on_p: &self.on_p + &o.on_p, on_one_plus_p: &self.on_one_plus_p + &o.on_one_plus_p }
    }

    /// `phi(x)` for `x` in `Q_p^*`: with `x = p^v omega <x>` and
    /// `<x> = (1 + p)^s`, `phi(x) = v phi(p) + s phi(1 + p)`.
    pub fn eval(&self, x: &Padic) -> Result<Padic> {
        let p = self.prime();
        if x.is_zero() {
            return domain("phi is defined on Q_p^* only");
        }
        let v = x.valuation();
        let u = x.try_div(&Padic::exact_int(p, p as i64).pow(v))?;
        let n = working_prec(&u);
        let lu = padic_log_prec(&one_unit(&u)?, n)?;
        let s = lu.try_div(&log_one_plus_p(p, n + 1))?;
        Ok(&self.on_p.mul_int(v) + &(&s * &self.on_one_plus_p))
    }
}

/// Precision to carry logarithms at: the value's own, or the default for
/// exact values.
fn working_prec(x: &Padic) -> i64 {
    if x.is_exact() {
        crate::padic::DEFAULT_PREC
    } else {
        x.prec()
    }
}

/// `exp^*` on the base level: the `log_p`-coordinate of `phi`.
pub fn dual_exp_base(phi: &LocalHomClass) -> Result<Padic> {
    Ok(phi.decompose()?.0)
}

/// Both sides of the derivative formula for the Coleman map on a class `z`
/// in the image of `H^1(Q_p, Q_p) -> H^1(Q_p, V^-)`, i.e. `z(q_A) = 0`:
///
/// - `l_sigma^-1 z(p^-1)`, the derivative read off from the Coleman map;
/// - `L_p(A) exp^*(z) l_sigma^-1`, the form through the dual exponential.
///
/// Returned as a pair; [`derivative_model_agreement`] compares them.
pub fn coleman_derivative_model(z: &LocalHomClass, t: &TateCurveData) -> Result<(Padic, Padic)> {
    let p = t.p;
    if z.prime() != p {
        return domain("class and Tate curve over different primes");
    }
    let at_q = z.eval(&t.q)?;
    if !at_q.is_zero() {
        return domain(format!("z(q_A) = {at_q} is not zero: z is not in the image of the map from H^1(Q_p, Q_p)"));
    }
    let prec = t.l_invariant.prec().min(t.q.prec());
    let l = l_sigma(p, prec + 1);
    let inv_p = Padic::exact(p, BigRational::new(BigInt::from(1), BigInt::from(p)));
    let lhs = z.eval(&inv_p)?.try_div(&l)?;
    let rhs = (&t.l_invariant * &dual_exp_base(z)?).try_div(&l)?;
    Ok((lhs, rhs))
}

/// Digits of agreement between the two sides of the derivative model.
pub fn derivative_model_agreement(z: &LocalHomClass, t: &TateCurveData) -> Result<i64> {
    let (a, b) = coleman_derivative_model(z, t)?;
    Ok(a.agreement(&b))
}
