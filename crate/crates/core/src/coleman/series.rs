use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{domain, Result};
use crate::padic::{binomial, CyclotomicElement, Padic, EXACT};

/// A power series over `Z_p` (or `Q_p`) known modulo `X^D`.
///
/// Each coefficient carries its own p-adic precision, so truncation in the
/// coefficient direction is tracked by the underlying [`Padic`]s. A series
/// built with [`PowerSeriesZp::polynomial`] has no tail at all, which lets
/// evaluation and composition skip the tail estimate.
#[derive(Clone, Debug)]
pub struct PowerSeriesZp {
    p: u64,
    coeffs: Vec<Padic>,
    poly: bool,
}

impl PartialEq for PowerSeriesZp {
    /// Coefficientwise equality to precision over the common degree.
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a == b)
    }
}

impl PowerSeriesZp {
    /// Series from coefficients of `X^0, ..., X^(D-1)`.
    pub fn new(p: u64, coeffs: Vec<Padic>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain("a series needs at least one coefficient");
        }
        if coeffs.iter().any(|c| c.prime() != p) {
            return domain(format!("coefficients over a prime other than {p}"));
        }
        Ok(PowerSeriesZp { p, coeffs, poly: false })
    }

    /// The polynomial `sum c_j X^j`, padded with zeros to `degree` terms.
    pub fn polynomial(p: u64, coeffs: &[i64], degree: usize) -> Self {
        let mut s = Self::from_ints(p, coeffs, degree.max(coeffs.len()));
        s.poly = true;
        s
    }

    pub fn from_rationals(p: u64, coeffs: &[BigRational], degree: usize) -> Self {
        let mut c: Vec<Padic> = coeffs.iter().take(degree).map(|r| Padic::exact(p, r.clone())).collect();
        c.resize(degree.max(1), Padic::exact_zero(p));
        PowerSeriesZp { p, coeffs: c, poly: false }
    }

    pub fn from_ints(p: u64, coeffs: &[i64], degree: usize) -> Self {
        let mut c: Vec<Padic> = coeffs.iter().take(degree).map(|&a| Padic::exact_int(p, a)).collect();
        c.resize(degree.max(1), Padic::exact_zero(p));
        PowerSeriesZp { p, coeffs: c, poly: false }
    }

    pub fn constant(c: Padic, degree: usize) -> Self {
        let p = c.prime();
        let mut coeffs = vec![Padic::exact_zero(p); degree.max(1)];
        coeffs[0] = c;
        PowerSeriesZp { p, coeffs, poly: true }
    }

    pub fn one(p: u64, degree: usize) -> Self {
        Self::constant(Padic::one(p), degree)
    }

    /// `X` itself.
    pub fn x(p: u64, degree: usize) -> Self {
        let mut s = Self::constant(Padic::exact_zero(p), degree);
        if degree > 1 {
            s.coeffs[1] = Padic::one(p);
        }
        s
    }

    /// `(1 + X)^a` for a p-adic integer `a`.
    pub fn one_plus_x_pow(a: &Padic, degree: usize) -> Self {
        let coeffs = (0..degree.max(1)).map(|j| binomial(a, j)).collect();
        let poly = a.as_exact().is_some_and(|r| r.is_integer() && !r.is_negative() && r.to_integer() < degree.into());
        PowerSeriesZp { p: a.prime(), coeffs, poly }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Whether the series is known to have no terms past its degree.
    pub fn is_polynomial(&self) -> bool {
        self.poly
    }

    /// Index of the last nonzero coefficient.
    fn top(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Number of known coefficients `D`.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Padic {
        &self.coeffs[j]
    }

    /// Smallest coefficient precision.
    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(Padic::prec).min().unwrap_or(EXACT)
    }

    /// Smallest coefficient valuation.
    pub fn min_valuation(&self) -> i64 {
        self.coeffs.iter().map(Padic::valuation).min().unwrap_or(EXACT)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.valuation() >= 0)
    }

    /// Whether the series lies in `1 + (p, X) Z_p[[X]]`.
    pub fn is_principal_unit(&self) -> bool {
        let c0 = &self.coeffs[0] - &Padic::one(self.p);
        self.is_integral() && (c0.is_zero() || c0.valuation() >= 1)
    }

    /// Whether `f(0)` is a p-adic unit.
    pub fn is_unit(&self) -> bool {
        let c0 = &self.coeffs[0];
        self.is_integral() && !c0.is_zero() && c0.valuation() == 0
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let mut c = self.coeffs.clone();
        let poly = self.poly && self.top() < degree;
        c.truncate(degree.max(1));
        PowerSeriesZp { p: self.p, coeffs: c, poly }
    }

    pub fn with_prec(&self, n: i64) -> Self {
        PowerSeriesZp { p: self.p, coeffs: self.coeffs.iter().map(|c| c.with_prec(n)).collect(), poly: self.poly }
    }

    fn common(&self, o: &Self) -> usize {
        assert_eq!(self.p, o.p, "mixed primes");
        self.degree().min(o.degree())
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let d = self.common(o);
        let poly = self.poly && o.poly;
        PowerSeriesZp { p: self.p, coeffs: (0..d).map(|j| &self.coeffs[j] + &o.coeffs[j]).collect(), poly }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let d = self.common(o);
        let poly = self.poly && o.poly;
        PowerSeriesZp { p: self.p, coeffs: (0..d).map(|j| &self.coeffs[j] - &o.coeffs[j]).collect(), poly }
    }

    /// Product modulo `X^D`, `D` the smaller of the two degrees.
    pub fn mul_ref(&self, o: &Self) -> Self {
        let d = self.common(o);
        let mut out = vec![Padic::exact_zero(self.p); d];
        for (i, a) in self.coeffs.iter().take(d).enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(d - i).enumerate() {
                if !b.is_exact_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        let poly = self.poly && o.poly && self.top() + o.top() < d;
        PowerSeriesZp { p: self.p, coeffs: out, poly }
    }

    pub fn scale(&self, c: &Padic) -> Self {
        PowerSeriesZp { p: self.p, coeffs: self.coeffs.iter().map(|x| x * c).collect(), poly: self.poly }
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inv()?;
        let d = self.degree();
        let mut out: Vec<Padic> = Vec::with_capacity(d);
        out.push(c0.clone());
        for j in 1..d {
            let mut s = Padic::exact_zero(self.p);
            for i in 1..=j {
                s = &s + &(&self.coeffs[i] * &out[j - i]);
            }
            out.push(-(&s * &c0));
        }
        Ok(PowerSeriesZp { p: self.p, coeffs: out, poly: false })
    }

    /// `f(h(X))`. Needs `h(0) = 0`, or `h` integral with `ord_p h(0) >= 1`.
    /// In the second case the unknown tail `sum_{j >= D} f_j h^j` contributes
    /// to `X^m` only through terms divisible by `h(0)^(D-m)`, and each
    /// coefficient's precision is cut accordingly.
    pub fn compose(&self, h: &Self) -> Result<Self> {
        let h0 = &h.coeffs[0];
        let shifted = !h0.is_zero();
        if shifted && (h0.valuation() < 1 || !h.is_integral()) {
            return domain(format!("composition needs integral h with ord_p h(0) >= 1, got h(0) = {h0}"));
        }
        let d = self.common(h);
        let h = h.truncate(d);
        let mut acc = Self::constant(self.coeffs[self.degree() - 1].clone(), d);
        for c in self.coeffs[..self.degree() - 1].iter().rev() {
            acc = acc.mul_ref(&h);
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        acc.poly = false;
        if shifted && !self.poly {
            let v0 = h0.valuation();
            let base = self.min_valuation().min(0);
            let n = self.degree() as i64;
            for (m, c) in acc.coeffs.iter_mut().enumerate() {
                *c = c.with_prec(v0.saturating_mul(n - m as i64).saturating_add(base));
            }
        }
        Ok(acc)
    }

    /// `f((1 + X)^p - 1)`.
    pub fn frobenius(&self) -> Self {
        let phi = Self::one_plus_x_pow(&Padic::exact_int(self.p, self.p as i64), self.degree())
            .sub_ref(&Self::one(self.p, self.degree()));
        self.compose(&phi).expect("phi(0) = 0")
    }

    /// `exp(f)` for `f(0) = 0`, from `E' = f' E`.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return domain("exp_series needs f(0) = 0");
        }
        let d = self.degree();
        let mut out = vec![Padic::one(self.p)];
        for j in 1..d {
            let mut s = Padic::exact_zero(self.p);
            for i in 1..=j {
                if !self.coeffs[i].is_exact_zero() {
                    s = &s + &(&self.coeffs[i].mul_int(i as i64) * &out[j - i]);
                }
            }
            out.push(s.div_int(j as i64));
        }
        Ok(PowerSeriesZp { p: self.p, coeffs: out, poly: false })
    }

    /// `log(f)` for `f(0) = 1`, from `L' = f'/f`.
    pub fn log_series(&self) -> Result<Self> {
        if !(&self.coeffs[0] - &Padic::one(self.p)).is_zero() {
            return domain("log_series needs f(0) = 1");
        }
        let d = self.degree();
        let inv = self.inverse()?;
        let deriv: Vec<Padic> = (1..d).map(|j| self.coeffs[j].mul_int(j as i64)).collect();
        let mut out = vec![Padic::exact_zero(self.p)];
        for j in 1..d {
            // coefficient of X^(j-1) in f'/f
            let mut s = Padic::exact_zero(self.p);
            for i in 0..j {
                s = &s + &(&deriv[i] * &inv.coeffs[j - 1 - i]);
            }
            out.push(s.div_int(j as i64));
        }
        Ok(PowerSeriesZp { p: self.p, coeffs: out, poly: false })
    }

    /// `f(x)` for `x` in the maximal ideal of `Z_p[zeta]`.
    ///
    /// The dropped tail `sum_{j >= D} f_j x^j` has coordinates divisible by
    /// `p^floor(D/e)` when `x^e` is divisible by `p`, and the result carries
    /// that precision.
    pub fn eval_cyclotomic(&self, x: &CyclotomicElement) -> Result<CyclotomicElement> {
        if x.prime() != self.p {
            return domain("evaluation point over another prime");
        }
        let e = ramification_of(x)?;
        let mut acc = CyclotomicElement::from_scalar(self.coeffs[self.degree() - 1].clone(), x.level());
        for c in self.coeffs[..self.degree() - 1].iter().rev() {
            acc = acc.mul_ref(x).add_ref(&CyclotomicElement::from_scalar(c.clone(), x.level()));
        }
        if self.poly {
            return Ok(acc);
        }
        let tail = (self.degree() as i64 / e as i64) + self.min_valuation().min(0);
        Ok(acc.with_prec(tail))
    }

    /// Evaluation at a point of `pZ_p`.
    pub fn eval(&self, x: &Padic) -> Result<Padic> {
        if !x.is_zero() && x.valuation() < 1 {
            return domain("evaluation needs ord_p x >= 1");
        }
        let mut acc = self.coeffs[self.degree() - 1].clone();
        for c in self.coeffs[..self.degree() - 1].iter().rev() {
            acc = &(&acc * x) + c;
        }
        if x.is_exact_zero() || self.poly {
            return Ok(acc);
        }
        let tail = x.valuation().saturating_mul(self.degree() as i64) + self.min_valuation().min(0);
        Ok(acc.with_prec(tail))
    }
}

/// Smallest `e` with `x^e` divisible by `p`, for `x` in the maximal ideal.
fn ramification_of(x: &CyclotomicElement) -> Result<u64> {
    if x.min_valuation() < 0 {
        return domain("evaluation point is not integral");
    }
    let p = x.prime();
    let e = crate::padic::degree(p, x.level()) as u64;
    // x in the maximal ideal iff x^e is divisible by p
    if x.pow(e).min_valuation() < 1 {
        return domain("evaluation point is not in the maximal ideal");
    }
    let mut lo = 1;
    let mut y = x.clone();
    while y.min_valuation() < 1 && lo < e {
        y = y.mul_ref(x);
        lo += 1;
    }
    Ok(lo)
}

impl fmt::Display for PowerSeriesZp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{j:>4}  {c}")?;
        }
        write!(f, "   + O(X^{})", self.degree())
    }
}
