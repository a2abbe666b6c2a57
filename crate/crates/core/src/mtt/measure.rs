use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::symbols::ModularSymbolTable;
use crate::error::{domain, Error, Result};
use crate::padic::{padic_exp_prec, padic_log_prec, val_rat, Padic, EXACT};

/// `mu(a + p^nu Z_p) = a_p^{-nu} [a/p^nu]^+` with `a_p = 1`.
pub fn measure(t: &ModularSymbolTable, p: u64, a: i64, nu: u32) -> Result<BigRational> {
    if a.rem_euclid(p as i64) == 0 {
        return domain(format!("p = {p} divides a = {a}; the measure lives on Z_p^*"));
    }
    if nu == 0 {
        return domain("level must be at least 1");
    }
    t.symbol(a, p.pow(nu))
}

/// A value of the Riemann sum with its error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct LpValue {
    pub value: Padic,
    pub level: u32,
    /// Heuristic `ord_p` of the truncation error (`EXACT` when there is none).
    pub error_ord: i64,
}

impl LpValue {
    /// `value` cut to the error estimate.
    pub fn certified(&self) -> Padic {
        if self.error_ord == EXACT {
            self.value.clone()
        } else {
            self.value.with_prec(self.error_ord.min(self.value.prec()))
        }
    }
}

/// The p-adic L-function of a curve at a split multiplicative prime, as the
/// Riemann sums of `<x>^{s-1}` against the measure at a fixed level.
#[derive(Clone, Debug)]
pub struct PadicLFunction {
    table: Arc<ModularSymbolTable>,
    p: u64,
    level: u32,
    prec: i64,
    /// `(a, mu(a + p^nu Z_p))` for `0 < a < p^nu`, `p` not dividing `a`.
    masses: Vec<(i64, BigRational)>,
    /// `log_p <a>` in the same order.
    logs: Vec<Padic>,
    min_val: i64,
}

impl PadicLFunction {
    pub fn new(table: Arc<ModularSymbolTable>, p: u64, level: u32, prec: i64) -> Result<Self> {
        if level == 0 {
            return domain("Riemann-sum level must be at least 1");
        }
        let ap = table.curve().a_ell(p);
        if ap != 1 {
            return domain(format!("a_p = {ap}: not split multiplicative at {p}"));
        }
        let m = p.pow(level) as i64;
        let mut masses = Vec::new();
        for a in 1..m {
            if a % p as i64 != 0 {
                masses.push((a, measure(&table, p, a, level)?));
            }
        }
        let logs = masses
            .par_iter()
            .map(|(a, _)| padic_log_prec(&Padic::from_int(p, *a, prec), prec))
            .collect::<Result<Vec<_>>>()?;
        let min_val = masses.iter().filter(|(_, x)| !x.is_zero()).map(|(_, x)| val_rat(x, p)).min().unwrap_or(0);
        Ok(PadicLFunction { table, p, level, prec, masses, logs, min_val })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn table(&self) -> &ModularSymbolTable {
        &self.table
    }

    pub fn masses(&self) -> &[(i64, BigRational)] {
        &self.masses
    }

    /// Total mass on `Z_p^*`, exact.
    pub fn total_mass(&self) -> BigRational {
        self.masses.iter().fold(BigRational::zero(), |acc, (_, x)| acc + x)
    }

    /// `ord_p` of the truncation error for a weight that is constant to
    /// `ord_p >= nu + extra` on each ball.
    fn error_ord(&self, extra: i64) -> i64 {
        self.level as i64 + extra + self.min_val.min(0)
    }

    fn sum_with(&self, weights: &[Padic]) -> Padic {
        // fixed left-to-right order keeps the result reproducible
        let mut acc = Padic::exact_zero(self.p);
        for (w, (_, mu)) in weights.iter().zip(&self.masses) {
            if !mu.is_zero() {
                acc = &acc + &(w * &Padic::exact(self.p, mu.clone()));
            }
        }
        acc
    }

    /// `sum_a <a>^{s-1} mu(a + p^nu Z_p)`.
    pub fn lp_value(&self, s: &Padic) -> Result<LpValue> {
        if s.prime() != self.p {
            return Err(Error::Domain("s lives over a different prime".into()));
        }
        let t = s - &Padic::one(self.p);
        if t.is_exact_zero() {
            let v = self.sum_with(&vec![Padic::one(self.p); self.masses.len()]);
            return Ok(LpValue { value: v, level: self.level, error_ord: EXACT });
        }
        if t.valuation() < 0 {
            return domain("s must lie in Z_p");
        }
        let weights = self
            .logs
            .par_iter()
            .map(|l| padic_exp_prec(&(&t * l), self.prec))
            .collect::<Result<Vec<_>>>()?;
        let vt = if t.is_zero() { t.prec() } else { t.valuation() };
        Ok(LpValue { value: self.sum_with(&weights).with_prec(self.prec), level: self.level, error_ord: self.error_ord(vt) })
    }

    /// `L_p'(1) = sum_a log_p<a> mu(a + p^nu Z_p)`.
    pub fn lp_derivative_at_1(&self) -> LpValue {
        LpValue { value: self.sum_with(&self.logs).with_prec(self.prec), level: self.level, error_ord: self.error_ord(0) }
    }

    /// Taylor coefficients of `L_p` at `s = 1`: `sum_a (log_p<a>)^j / j! mu`.
    pub fn taylor_coefficients(&self, jmax: usize) -> Vec<LpValue> {
        let mut out = Vec::with_capacity(jmax + 1);
        let mut pw: Vec<Padic> = vec![Padic::one(self.p); self.logs.len()];
        for j in 0..=jmax {
            let v = if j == 0 { self.sum_with(&pw) } else { self.sum_with(&pw).with_prec(self.prec) };
            let vfact: i64 = (1..=j as i64).map(|k| crate::padic::val_int(&k.into(), self.p)).sum();
            let err = if j == 0 { EXACT } else { self.error_ord(j as i64 - 1 - vfact) };
            out.push(LpValue { value: v, level: self.level, error_ord: err });
            for (w, l) in pw.iter_mut().zip(&self.logs) {
                *w = (&*w * l).div_int(j as i64 + 1);
            }
        }
        out
    }
}
