use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::series::PowerSeriesZp;
use crate::error::{domain, Error, Result};
use crate::padic::{log_one_plus_p, padic_exp_prec, padic_log_prec, teichmuller, CyclotomicElement, Padic};

/// Largest series degree accepted by the constructors.
pub const MAX_DEGREE: usize = 5000;
/// Largest coefficient precision accepted by the constructors.
pub const MAX_PREC: i64 = 400;

fn check_prime(p: u64) -> Result<()> {
    if p < 3 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return domain(format!("p = {p} must be an odd prime"));
    }
    Ok(())
}

/// `x_0, ..., x_n` with
/// `x_k = p + Tr_{Q_p(mu_{p^{k+1}})/Q_{p,k}} sum_{i=0}^{k} (zeta_{p^{k+1-i}} - 1)/p^i`,
/// each at its own level of the cyclotomic tower. The trace down to the
/// `Z_p`-extension layer `Q_{p,k}` is the sum over `Delta = mu_{p-1}`.
///
/// Fails with a validation error if the family is not compatible under the
/// traces `Q_{p,k} -> Q_{p,k-1}`.
pub fn x_values(p: u64, n: u32) -> Result<Vec<CyclotomicElement>> {
    check_prime(p)?;
    if n > 3 {
        return domain(format!("n = {n}: levels above 3 are out of range"));
    }
    let mut out: Vec<CyclotomicElement> = Vec::new();
    for k in 0..=n {
        let zeta = CyclotomicElement::zeta(p, k);
        let one = CyclotomicElement::one(p, k);
        let mut s = CyclotomicElement::zero(p, k);
        for i in 0..=k {
            let z = zeta.pow(p.pow(i)).sub_ref(&one);
            let inv = Padic::exact(p, BigRational::new(BigInt::one(), BigInt::from(p).pow(i)));
            s = s.add_ref(&z.scale(&inv));
        }
        let x = s.trace_delta()?.add_ref(&CyclotomicElement::from_scalar(Padic::exact_int(p, p as i64), k));
        if k > 0 {
            let down = x.trace_to_level(k - 1)?;
            if down != out[k as usize - 1] {
                return Err(Error::Validation(format!("Tr(x_{k}) = {down} differs from x_{}", k - 1)));
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// Signed Stirling numbers of the first kind `s(j, i)`, row by row.
struct StirlingRows {
    row: Vec<BigInt>,
    j: usize,
}

impl StirlingRows {
    fn new() -> Self {
        StirlingRows { row: vec![BigInt::one()], j: 0 }
    }

    fn advance(&mut self) {
        // s(j+1, i) = s(j, i-1) - j s(j, i)
        let j = BigInt::from(self.j);
        let mut next = vec![BigInt::zero(); self.row.len() + 1];
        for (i, c) in self.row.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= &j * c;
        }
        self.row = next;
        self.j += 1;
    }
}

/// `L(X) = sum_{omega in mu_{p-1}} (1 + X)^omega`, the transform of the sum of
/// Dirac masses at the Teichmüller points.
pub fn teichmuller_transform(p: u64, degree: usize, prec: i64) -> Result<PowerSeriesZp> {
    check_prime(p)?;
    let mut acc = PowerSeriesZp::constant(Padic::exact_zero(p), degree);
    for a in 1..p {
        let w = teichmuller(&BigInt::from(a), p, prec)?;
        acc = acc.add_ref(&PowerSeriesZp::one_plus_x_pow(&w, degree));
    }
    Ok(acc)
}

/// `G = log g`, the unique solution of `G - G((1+X)^p - 1)/p = L` that is
/// invariant under `X -> (1+X)^omega - 1` for `omega` in `mu_{p-1}`.
///
/// Writing `G = p + sum_omega sum_k ((1+X)^(omega p^k) - 1)/p^k` and expanding
/// the binomials by Stirling numbers, the power sums of `mu_{p-1}` kill every
/// exponent not divisible by `p - 1` and the sum over `k` is geometric:
///
/// ```text
/// G_0 = p,   G_j = (p-1)/j! sum_{i <= j, (p-1) | i} s(j, i) / (1 - p^(i-1)).
/// ```
pub fn log_g_series(p: u64, degree: usize, prec: i64) -> Result<PowerSeriesZp> {
    check_prime(p)?;
    let mut coeffs = vec![Padic::exact_int(p, p as i64)];
    let mut st = StirlingRows::new();
    let mut fact = BigInt::one();
    let pb = BigInt::from(p);
    for j in 1..degree.max(1) {
        st.advance();
        fact *= j;
        let mut s = Padic::exact_zero(p);
        let mut i = (p - 1) as usize;
        while i <= j {
            let den = BigInt::one() - pb.pow(i as u32 - 1);
            let r = BigRational::new(st.row[i].clone(), den);
            s = &s + &Padic::from_rational(p, &r, prec);
            i += (p - 1) as usize;
        }
        let scale = Padic::exact(p, BigRational::new(BigInt::from(p - 1), fact.clone()));
        coeffs.push(&s * &scale);
    }
    PowerSeriesZp::new(p, coeffs)
}

/// The principal unit `g` in `1 + (p, X) Z_p[[X]]` with `log_p g(0) = p`,
/// `log_p g(zeta_{p^{n+1}} - 1) = x_n` and `N_{m,n}(g(zeta_{p^{m+1}} - 1)) =
/// g(zeta_{p^{n+1}} - 1)`, to degree `D` and `p`-adic precision `N`.
///
/// `g = exp(p) exp(G - p)` with `G` from [`log_g_series`]. The exponential
/// recurrence divides by `j`, so the work is done with guard digits and the
/// result is refused if fewer than `N` survive.
pub fn construct_g(p: u64, degree: usize, prec: i64) -> Result<PowerSeriesZp> {
    check_prime(p)?;
    if !(2..=MAX_DEGREE).contains(&degree) {
        return domain(format!("degree {degree} outside 2..={MAX_DEGREE}"));
    }
    if !(1..=MAX_PREC).contains(&prec) {
        return domain(format!("precision {prec} outside 1..={MAX_PREC}"));
    }
    let guard = degree as i64 / (p as i64 - 1) + 10;
    let cap = prec + guard;
    let big_g = log_g_series(p, degree, cap)?;
    let mut h: Vec<Padic> = big_g.coeffs().to_vec();
    h[0] = Padic::exact_zero(p);
    let e = PowerSeriesZp::new(p, h)?.exp_series()?;
    let ep = padic_exp_prec(&Padic::exact_int(p, p as i64), cap)?;
    let g = e.scale(&ep);
    if g.prec() < prec {
        return Err(Error::Precision(format!(
            "only {} digits survived the exponential at degree {degree}; raise the guard",
            g.prec()
        )));
    }
    if !g.is_integral() {
        return Err(Error::Validation("constructed series is not integral".into()));
    }
    Ok(g.with_prec(prec))
}

/// Degree needed so that `g(zeta_{p^{n+1}} - 1)` is known to `digits` digits.
pub fn degree_for(p: u64, n: u32, digits: i64) -> usize {
    crate::padic::degree(p, n) * digits.max(1) as usize + 1
}

/// One step of the fixed-point iteration `G -> L + G((1+X)^p - 1)/p`.
fn iterate_once(g: &PowerSeriesZp, l: &PowerSeriesZp) -> PowerSeriesZp {
    let p = g.prime();
    let inv_p = Padic::exact(p, BigRational::new(BigInt::one(), BigInt::from(p)));
    l.add_ref(&g.frobenius().scale(&inv_p))
}

/// `log g` by fixed-point iteration from a seed, as an independent route to
/// [`log_g_series`]. Returns the limit and the number of steps.
///
/// The constant term moves as `c -> (p - 1) + c/p`, whose only fixed point
/// is `p`, and the `X` coefficient is untouched; the seed must therefore have
/// `G(0) = p` and no linear term. Higher coefficients contract.
pub fn iterate_log_g(seed: &PowerSeriesZp, prec: i64, max_steps: usize) -> Result<(PowerSeriesZp, usize)> {
    let p = seed.prime();
    check_prime(p)?;
    let pp = Padic::exact_int(p, p as i64);
    if seed.coeff(0) != &pp || seed.coeff(0).prec() < prec {
        return domain("seed must have constant term p");
    }
    if seed.degree() > 1 && !seed.coeff(1).is_zero() {
        return domain("seed must have no linear term (Delta-invariance)");
    }
    let guard = (seed.degree() as f64).log(p as f64).ceil() as i64 + 5;
    let l = teichmuller_transform(p, seed.degree(), prec + guard)?;
    let mut g = seed.with_prec(prec + guard);
    for step in 1..=max_steps {
        let next = iterate_once(&g, &l);
        if next.with_prec(prec) == g.with_prec(prec) && step > 1 {
            return Ok((next.with_prec(prec), step));
        }
        g = next;
    }
    Err(Error::Convergence(format!("no stabilisation modulo p^{prec} after {max_steps} steps")))
}

/// Two seeds and the explicit expansion, compared modulo `(p^N, X^D)`.
///
/// Lemma-level uniqueness concerns exact `Z_p[[X]]`; agreement here is the
/// finite-precision proxy.
#[derive(Clone, Debug)]
pub struct UniquenessProbe {
    pub explicit: PowerSeriesZp,
    pub from_constant_seed: PowerSeriesZp,
    pub from_perturbed_seed: PowerSeriesZp,
    pub steps: (usize, usize),
    pub agree: bool,
}

pub fn uniqueness_probe(p: u64, degree: usize, prec: i64) -> Result<UniquenessProbe> {
    let explicit = log_g_series(p, degree, prec + 10)?.with_prec(prec);
    let seed_a = PowerSeriesZp::constant(Padic::exact_int(p, p as i64), degree);
    // p + 7 (L - (p - 1)) is Delta-invariant with no linear term
    let l = teichmuller_transform(p, degree, prec + 10)?;
    let shift = l.sub_ref(&PowerSeriesZp::constant(Padic::exact_int(p, p as i64 - 1), degree));
    let seed_b = seed_a.add_ref(&shift.scale(&Padic::exact_int(p, 7)));
    let cap = 10 * (prec as usize + degree);
    let (a, sa) = iterate_log_g(&seed_a, prec, cap)?;
    let (b, sb) = iterate_log_g(&seed_b, prec, cap)?;
    let agree = a == explicit && b == explicit;
    Ok(UniquenessProbe { explicit, from_constant_seed: a, from_perturbed_seed: b, steps: (sa, sb), agree })
}

/// Where a family of tower units came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `C_n = f(zeta_{p^{n+1}} - 1)` for a series of the given degree.
    Series { degree: usize },
    /// Supplied directly by the caller.
    Direct,
}

/// `C_0, ..., C_nmax` with `C_n` in `Q_p(mu_{p^{n+1}})`.
#[derive(Clone, Debug)]
pub struct NormCompatibleUnits {
    units: Vec<CyclotomicElement>,
    provenance: Provenance,
}

impl NormCompatibleUnits {
    pub fn from_series(f: &PowerSeriesZp, n_max: u32) -> Result<Self> {
        let p = f.prime();
        let mut units = Vec::new();
        for n in 0..=n_max {
            let x = CyclotomicElement::zeta(p, n).sub_ref(&CyclotomicElement::one(p, n));
            units.push(f.eval_cyclotomic(&x)?);
        }
        let out = NormCompatibleUnits { units, provenance: Provenance::Series { degree: f.degree() } };
        out.validate()?;
        Ok(out)
    }

    pub fn direct(units: Vec<CyclotomicElement>) -> Result<Self> {
        for (n, u) in units.iter().enumerate() {
            if u.level() != n as u32 {
                return domain(format!("unit {n} lives at level {}", u.level()));
            }
        }
        let out = NormCompatibleUnits { units, provenance: Provenance::Direct };
        out.validate()?;
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        for (n, u) in self.units.iter().enumerate() {
            if !u.is_principal_unit() {
                return Err(Error::Validation(format!("C_{n} is not a principal unit")));
            }
        }
        for m in 1..self.units.len() {
            let down = self.units[m].norm_to_level(m as u32 - 1)?;
            if down != self.units[m - 1] {
                return Err(Error::Validation(format!("N(C_{m}) differs from C_{}", m - 1)));
            }
        }
        Ok(())
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn units(&self) -> &[CyclotomicElement] {
        &self.units
    }

    pub fn unit(&self, n: u32) -> Result<&CyclotomicElement> {
        self.units.get(n as usize).ok_or_else(|| Error::Lookup(format!("level {n} not stored")))
    }

    /// Digits of agreement between `N_{m,m-1}(C_m)` and `C_{m-1}` for each `m`.
    pub fn norm_agreement(&self) -> Result<Vec<i64>> {
        (1..self.units.len())
            .map(|m| Ok(self.units[m].norm_to_level(m as u32 - 1)?.agreement(&self.units[m - 1])))
            .collect()
    }
}

/// `l_sigma = log_p(1 + p) (1 - 1/p)` for the generator with cyclotomic
/// character `1 + p`.
pub fn l_sigma(p: u64, prec: i64) -> Padic {
    let l = log_one_plus_p(p, prec);
    &l * &Padic::exact(p, BigRational::new(BigInt::from(p - 1), BigInt::from(p)))
}

/// `ord(c')` from the constant term of `g`:
/// `log_p g(0) = (p - 1) ord(c') log_p(1 + p)`.
pub fn ord_c_prime(g: &PowerSeriesZp) -> Result<Padic> {
    let p = g.prime();
    let g0 = g.coeff(0);
    let d = g0 - &Padic::one(p);
    if !(d.is_zero() || d.valuation() >= 1) {
        return domain(format!("g(0) = {g0} is not a principal unit"));
    }
    let n = g0.prec().min(MAX_PREC);
    let lg = padic_log_prec(g0, n)?;
    let den = log_one_plus_p(p, n + 1).mul_int(p as i64 - 1);
    lg.try_div(&den)
}
