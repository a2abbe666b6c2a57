use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;

use super::measure::{LpValue, PadicLFunction};
use super::periods::{l_ratio, omega_plus};
use super::reconstruct::reconstruct;
use super::symbols::ModularSymbolTable;
use crate::error::{domain, Error, Result};
use crate::padic::{degree, padic_exp_prec, padic_log_prec, CyclotomicElement, Padic, PadicCharacter};
use crate::tate::{an_table, tate_period, CurveData};

/// Outcome of the derivative check `L_p'(1) = L_p(A) L(A,1)/Omega^+`.
#[derive(Clone, Debug)]
pub struct GsReport {
    pub derivative: LpValue,
    pub l_invariant: Padic,
    /// `L(A,1)/Omega^+` from the complex side.
    pub l_ratio: BigRational,
    pub predicted: Padic,
    /// `ord_p(derivative - predicted)`, capped by the working precision.
    pub digits: i64,
}

pub fn gs_check(lf: &PadicLFunction) -> Result<GsReport> {
    let e = lf.table().curve();
    let p = lf.prime();
    let t = tate_period(e, p, lf.precision())?;
    let ratio = l_ratio(e)?;
    let predicted = &t.l_invariant * &Padic::exact(p, ratio.clone());
    let derivative = lf.lp_derivative_at_1();
    let digits = derivative.value.agreement(&predicted);
    Ok(GsReport { derivative, l_invariant: t.l_invariant, l_ratio: ratio, predicted, digits })
}

/// `L(E, chi, 1)` for a primitive character of conductor `p^(m+1)`, with the
/// root number of the twist.
///
/// The twist has conductor `N_0 p^(2(m+1))` (`N_0` the tame level). Its
/// smoothed sum at two heights gives two linear equations in `L` and the
/// unknown root number; a third height certifies the solution.
pub fn twisted_l_value(e: &CurveData, p: u64, chi: &PadicCharacter) -> Result<(Complex64, Complex64)> {
    if chi.is_trivial() {
        return domain("twisted L-value needs a nontrivial character");
    }
    let n0 = e.conductor()? / p;
    let q = (n0 as f64) * (chi.conductor() as f64).powi(2);
    let sq = q.sqrt();
    let ts = [1.0, 1.3, 0.8];
    let nmax = (42.0 * sq / (2.0 * PI * 0.8)).ceil() as usize + 2;
    let an = an_table(e, nmax);
    let side = |t: f64, conj: bool| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (n, a) in an.iter().enumerate().skip(1) {
            if *a == 0 {
                continue;
            }
            let c = chi.complex_value(n as i64);
            let c = if conj { c.conj() } else { c };
            s += c * (*a as f64 / n as f64 * (-2.0 * PI * n as f64 * t / sq).exp());
        }
        s
    };
    // L = A(t) + eps B(t) with A over chi, B over its conjugate at 1/t
    let a: Vec<Complex64> = ts.iter().map(|&t| side(t, false)).collect();
    let b: Vec<Complex64> = ts.iter().map(|&t| side(1.0 / t, true)).collect();
    let den = b[1] - b[0];
    if den.norm() < 1e-9 {
        return Err(Error::Precision("degenerate heights in the twisted functional equation".into()));
    }
    let eps = (a[0] - a[1]) / den;
    let l = a[0] + eps * b[0];
    let check = a[2] + eps * b[2];
    if (check - l).norm() > 1e-8 || (eps.norm() - 1.0).abs() > 1e-8 {
        return Err(Error::Precision(format!(
            "twisted L-value not certified: |eps| = {}, third-height residual {:e}",
            eps.norm(),
            (check - l).norm()
        )));
    }
    Ok((l, eps))
}

fn complex_gauss_sum(chi: &PadicCharacter) -> Complex64 {
    let f = chi.conductor() as i64;
    (1..f)
        .map(|a| chi.complex_value(a) * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / f as f64))
        .sum()
}

fn solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .expect("nonempty");
        if a[piv][col].norm() < 1e-12 {
            return Err(Error::Precision("singular embedding matrix".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
            let v = b[col];
            b[r] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Ok(x)
}

/// Both sides of the interpolation formula for one character.
#[derive(Clone, Debug)]
pub struct InterpolationReport {
    pub character: PadicCharacter,
    /// `sum_a chi(a) mu(a + p^(m+1) Z_p)`.
    pub measure_side: CyclotomicElement,
    /// `tau(chi) L(A, chi^-1, 1)/Omega^+`, recovered from all complex
    /// embeddings.
    pub complex_side: CyclotomicElement,
    /// The complex value under `zeta -> exp(2 pi i/p^m)`.
    pub complex_value: Complex64,
    pub root_number: Complex64,
    pub digits: i64,
}

/// Measure side of the interpolation formula.
pub fn character_integral(t: &ModularSymbolTable, chi: &PadicCharacter) -> Result<CyclotomicElement> {
    let p = chi.prime();
    let f = chi.conductor();
    let level = chi.m() - 1;
    let mut acc = CyclotomicElement::zero(p, level);
    for a in 1..f as i64 {
        if a % p as i64 == 0 {
            continue;
        }
        let mu = super::measure::measure(t, p, a, chi.m() + 1)?;
        acc = &acc + &chi.value(a, level).scale(&Padic::exact(p, mu));
    }
    Ok(acc)
}

pub fn interpolation_check(t: &ModularSymbolTable, chi: &PadicCharacter, prec: i64) -> Result<InterpolationReport> {
    if chi.is_trivial() {
        return domain("interpolation check needs a nontrivial character");
    }
    let e = t.curve();
    let p = chi.prime();
    let pm = chi.order() as i64;
    let omega = omega_plus(e);
    let units: Vec<i64> = (1..pm).filter(|b| b % p as i64 != 0).collect();
    let mut values = Vec::with_capacity(units.len());
    let mut root = Complex64::new(0.0, 0.0);
    for &b in &units {
        let cb = chi.power(b)?;
        let (l, eps) = twisted_l_value(e, p, &cb.conjugate())?;
        if b == 1 {
            root = eps;
        }
        values.push(complex_gauss_sum(&cb) * l / omega);
    }
    let dim = degree(p, chi.m() - 1);
    let mat: Vec<Vec<Complex64>> = units
        .iter()
        .map(|&b| (0..dim).map(|i| Complex64::from_polar(1.0, 2.0 * PI * (b * i as i64) as f64 / pm as f64)).collect())
        .collect();
    let coeffs = solve(mat, values.clone())?;
    let mut exact = Vec::with_capacity(dim);
    for (i, c) in coeffs.iter().enumerate() {
        if c.im.abs() > 1e-7 {
            return Err(Error::Precision(format!("coefficient {i} has imaginary part {:e}", c.im)));
        }
        exact.push(Padic::exact(p, reconstruct(c.re, 10_000, 1e-7)?));
    }
    let complex_side = CyclotomicElement::from_coeffs(p, chi.m() - 1, exact)?;
    let measure_side = character_integral(t, chi)?;
    let digits = measure_side.with_prec(prec).agreement(&complex_side.with_prec(prec));
    Ok(InterpolationReport {
        character: chi.clone(),
        measure_side,
        complex_side,
        complex_value: values[0],
        root_number: root,
        digits,
    })
}

/// Both sides of `<N>^{s/2} L_p(s) = -w <N>^{(2-s)/2} L_p(2-s)` at one `s`.
#[derive(Clone, Debug)]
pub struct FunctionalEquationReport {
    pub s: Padic,
    pub lhs: Padic,
    pub rhs: Padic,
    pub residual: Padic,
    /// Riemann-sum error estimate, the smaller of the two evaluations.
    pub error_ord: i64,
}

impl FunctionalEquationReport {
    /// Whether the residual vanishes to the error estimate.
    pub fn holds(&self) -> bool {
        self.residual.is_exact_zero() || self.residual.valuation() >= self.error_ord.min(self.residual.prec())
    }
}

/// `N` is the tame level, `w` the root number of the curve.
pub fn functional_equation_check(lf: &PadicLFunction, s: &Padic, sign: i64) -> Result<FunctionalEquationReport> {
    let p = lf.prime();
    let prec = lf.precision();
    let n0 = lf.table().level() / p;
    let log_n = padic_log_prec(&Padic::from_int(p, n0, prec), prec)?;
    let pref = |x: &Padic| padic_exp_prec(&(&x.div_int(2) * &log_n), prec);
    let two = Padic::exact_int(p, 2);
    let s2 = &two - s;
    let l1 = lf.lp_value(s)?;
    let l2 = lf.lp_value(&s2)?;
    let lhs = &pref(s)? * &l1.value;
    let rhs = (&pref(&s2)? * &l2.value).mul_int(-sign);
    let residual = &lhs - &rhs;
    Ok(FunctionalEquationReport { s: s.clone(), lhs, rhs, residual, error_ord: l1.error_ord.min(l2.error_ord) })
}
