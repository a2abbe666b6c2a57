use num_bigint::BigInt;
use num_rational::BigRational;

use super::curve::CurveData;
use super::jseries::{q_times_j, J_TERMS};
use super::reduction::check_split_multiplicative;
use crate::error::{domain, Error, Result};
use crate::padic::{padic_log_prec, val_rat, Padic};

/// A curve's p-adic package at a split multiplicative prime.
#[derive(Clone, Debug)]
pub struct TateCurveData {
    pub p: u64,
    /// Tate period, `ord_p(q_A) >= 1`.
    pub q: Padic,
    /// `L_p(A) = log_p(q_A) / ord_p(q_A)`.
    pub l_invariant: Padic,
    pub ord_q: i64,
    /// Requested absolute precision of `q_A`.
    pub precision: i64,
    /// `ord_p` of the Newton residual `q - J(q)/j` after each step.
    pub residuals: Vec<i64>,
}

fn eval_j_series(q: &Padic, terms: &[BigInt]) -> (Padic, Padic) {
    // Horner for J(q) and J'(q)
    let p = q.prime();
    let mut val = Padic::exact_zero(p);
    let mut der = Padic::exact_zero(p);
    for c in terms.iter().rev() {
        der = &(&der * q) + &val;
        val = &(&val * q) + &Padic::exact_int(p, c.clone());
    }
    (val, der)
}

/// `j(q) = 1/q + 744 + 196884 q + ...` evaluated at a p-adic `q`.
pub fn j_of_q(q: &Padic) -> Result<Padic> {
    let (jq, _) = eval_j_series(q, q_times_j());
    jq.try_div(q)
}

/// Solve `j(q) = j` for `ord_p(j) < 0` by Newton's method on
/// `Phi(q) = q - J(q)/j`, with `J(q) = q j(q)`.
pub fn tate_parameter(j: &BigRational, p: u64, precision: i64) -> Result<(Padic, Vec<i64>)> {
    let vj = val_rat(j, p);
    if vj >= 0 {
        return domain(format!("ord_p(j) = {vj} >= 0: no Tate parameter"));
    }
    let k = -vj;
    if precision <= k {
        return Err(Error::Precision(format!("precision {precision} does not exceed ord_p(q) = {k}")));
    }
    if precision > k * J_TERMS as i64 {
        return Err(Error::Precision(format!(
            "precision {precision} exceeds the {J_TERMS}-term truncation of j(q) (max {})",
            k * J_TERMS as i64
        )));
    }
    let work = precision + k + 2;
    let u = Padic::from_rational(p, &j.recip(), work);
    let terms = q_times_j();
    let mut q = u.clone();
    let mut residuals = Vec::new();
    for _ in 0..64 {
        let (jq, djq) = eval_j_series(&q, terms);
        let phi = &q - &(&u * &jq);
        let r = phi.valuation();
        if let Some(&last) = residuals.last() {
            if r <= last && r < work {
                return Err(Error::Convergence(format!("Newton residual stalled at ord {r}")));
            }
        }
        residuals.push(r.min(work));
        if r >= precision + k {
            break;
        }
        let dphi = &Padic::one(p) - &(&u * &djq);
        q = &q - &phi.try_div(&dphi)?;
    }
    Ok((q.with_prec(precision), residuals))
}

/// Tate period and L-invariant of `E` at a split multiplicative prime `p`.
pub fn tate_period(e: &CurveData, p: u64, precision: i64) -> Result<TateCurveData> {
    let check = check_split_multiplicative(e, p);
    if !check.split {
        return domain(format!("{}: {}", e.label(), check.diagnostic));
    }
    let (q, residuals) = tate_parameter(&e.j_invariant(), p, precision)?;
    let ord_q = q.valuation();
    let l_invariant = padic_log_prec(&q, precision)?.div_int(ord_q);
    Ok(TateCurveData { p, q, l_invariant, ord_q, precision, residuals })
}

impl TateCurveData {
    /// `log_{q_A}(x) = log_p(x) - L_p(A) ord_p(x)`, the branch vanishing at `q_A`.
    pub fn branch_log(&self, x: &Padic) -> Result<Padic> {
        if x.is_zero() {
            return domain("branch_log of zero");
        }
        let l = padic_log_prec(x, self.precision)?;
        Ok(&l - &self.l_invariant.mul_int(x.valuation()))
    }
}

pub fn branch_log(t: &TateCurveData, x: &Padic) -> Result<Padic> {
    t.branch_log(x)
}
