use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::functions::DEFAULT_PREC;
use super::number::{Padic, Verdict, EXACT};
use crate::error::{domain, Error, Result};

/// Element of `Q_p(zeta)` with `zeta` a primitive `p^(n+1)`-th root of unity,
/// stored in the power basis `1, zeta, ..., zeta^(d-1)`, `d = (p-1) p^n`.
///
/// The power basis is an integral basis of `Z_p[zeta]`, so integrality and
/// divisibility by `p^k` can be read off the coordinates.
#[derive(Clone, Debug)]
pub struct CyclotomicElement {
    p: u64,
    level: u32,
    coeffs: Vec<Padic>,
}

pub fn degree(p: u64, level: u32) -> usize {
    ((p - 1) * p.pow(level)) as usize
}

fn order(p: u64, level: u32) -> u64 {
    p.pow(level + 1)
}

impl CyclotomicElement {
    pub fn zero(p: u64, level: u32) -> Self {
        CyclotomicElement { p, level, coeffs: vec![Padic::exact_zero(p); degree(p, level)] }
    }

    pub fn from_scalar(c: Padic, level: u32) -> Self {
        let mut z = Self::zero(c.prime(), level);
        z.coeffs[0] = c;
        z
    }

    pub fn one(p: u64, level: u32) -> Self {
        Self::from_scalar(Padic::one(p), level)
    }

    /// `zeta^e` where `zeta` generates `mu_{p^(level+1)}`.
    pub fn zeta_pow(p: u64, level: u32, e: i64) -> Self {
        let big = order(p, level) as i64;
        let mut full = vec![Padic::exact_zero(p); big as usize];
        full[e.rem_euclid(big) as usize] = Padic::one(p);
        Self::reduce(p, level, full)
    }

    pub fn zeta(p: u64, level: u32) -> Self {
        Self::zeta_pow(p, level, 1)
    }

    /// Build from coordinates; the vector must have length `(p-1) p^level`.
    pub fn from_coeffs(p: u64, level: u32, coeffs: Vec<Padic>) -> Result<Self> {
        if coeffs.len() != degree(p, level) {
            return domain(format!("expected {} coordinates, got {}", degree(p, level), coeffs.len()));
        }
        Ok(CyclotomicElement { p, level, coeffs })
    }

    /// Reduce a vector of coefficients of `zeta^0, zeta^1, ...` (any length)
    /// modulo `zeta^(p^(n+1)) - 1` and the cyclotomic polynomial.
    pub fn reduce(p: u64, level: u32, full: Vec<Padic>) -> Self {
        let big = order(p, level) as usize;
        let d = degree(p, level);
        let step = p.pow(level) as usize;
        let mut v: Vec<Padic> = Vec::with_capacity(big);
        for (i, c) in full.into_iter().enumerate() {
            if i < big {
                v.push(c);
            } else {
                let j = i % big;
                v[j] = &v[j] + &c;
            }
        }
        while v.len() < big {
            v.push(Padic::exact_zero(p));
        }
        // zeta^((p-1)p^n + r) = -sum_{i<p-1} zeta^(i p^n + r)
        for e in (d..big).rev() {
            let c = std::mem::replace(&mut v[e], Padic::exact_zero(p));
            if c.is_exact_zero() {
                continue;
            }
            let r = e - d;
            for i in 0..(p as usize - 1) {
                let t = i * step + r;
                v[t] = &v[t] - &c;
            }
        }
        v.truncate(d);
        CyclotomicElement { p, level, coeffs: v }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Padic {
        &self.coeffs[i]
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Smallest coordinate precision.
    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(Padic::prec).min().unwrap_or(EXACT)
    }

    /// Smallest coordinate valuation (`p^k` divides the element iff this is `>= k`).
    pub fn min_valuation(&self) -> i64 {
        self.coeffs.iter().map(Padic::valuation).min().unwrap_or(EXACT)
    }

    pub fn with_prec(&self, n: i64) -> Self {
        self.map(|c| c.with_prec(n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Padic::is_zero)
    }

    /// True when all coordinates but the constant one vanish.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(Padic::is_zero)
    }

    fn map(&self, f: impl Fn(&Padic) -> Padic) -> Self {
        CyclotomicElement { p: self.p, level: self.level, coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixed primes");
        assert_eq!(self.level, o.level, "mixed tower levels");
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicElement { p: self.p, level: self.level, coeffs }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicElement { p: self.p, level: self.level, coeffs }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        self.check(o);
        let d = self.coeffs.len();
        let mut full = vec![Padic::exact_zero(self.p); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                full[i + j] = &full[i + j] + &(a * b);
            }
        }
        Self::reduce(self.p, self.level, full)
    }

    pub fn scale(&self, c: &Padic) -> Self {
        self.map(|x| x * c)
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p, self.level);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Multiply by `zeta^k` (a rotation followed by reduction).
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let big = order(self.p, self.level) as i64;
        let mut full = vec![Padic::exact_zero(self.p); big as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(i as i64 + k).rem_euclid(big) as usize] = c.clone();
        }
        Self::reduce(self.p, self.level, full)
    }

    /// Galois action `sigma_a: zeta -> zeta^a` for `a` prime to `p`.
    pub fn galois(&self, a: i64) -> Result<Self> {
        if a.rem_euclid(self.p as i64) == 0 {
            return domain(format!("sigma_a needs gcd(a, p) = 1, got a = {a}"));
        }
        let big = order(self.p, self.level) as i64;
        let mut full = vec![Padic::exact_zero(self.p); big as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = (a.rem_euclid(big) as i128 * i as i128 % big as i128) as usize;
            full[j] = &full[j] + c;
        }
        Ok(Self::reduce(self.p, self.level, full))
    }

    /// View at a higher level via `zeta_n = zeta_m^(p^(m-n))`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target < self.level {
            return domain(format!("cannot embed level {} into level {target}", self.level));
        }
        let s = self.p.pow(target - self.level) as usize;
        let mut out = Self::zero(self.p, target);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i * s] = c.clone();
        }
        Ok(out)
    }

    /// Descend an element known to lie in the level-`target` subfield.
    fn descend(&self, target: u32) -> Result<Self> {
        let s = self.p.pow(self.level - target) as usize;
        let mut out = Self::zero(self.p, target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % s == 0 {
                out.coeffs[i / s] = c.clone();
            } else if !c.is_zero() {
                return Err(Error::Precision(format!(
                    "result not in the level-{target} subfield (coordinate {i} = {c})"
                )));
            }
        }
        Ok(out)
    }

    /// Representatives `a = 1 + j p^(t+1)` of `Gal(level n / level t)`.
    fn relative_group(&self, target: u32) -> Vec<i64> {
        let step = self.p.pow(target + 1) as i64;
        let count = self.p.pow(self.level - target) as i64;
        (0..count).map(|j| 1 + j * step).collect()
    }

    pub fn trace_to_level(&self, target: u32) -> Result<Self> {
        if target > self.level {
            return domain(format!("trace target {target} above source level {}", self.level));
        }
        let mut acc = Self::zero(self.p, self.level);
        for a in self.relative_group(target) {
            acc = acc.add_ref(&self.galois(a)?);
        }
        acc.descend(target)
    }

    pub fn norm_to_level(&self, target: u32) -> Result<Self> {
        if target > self.level {
            return domain(format!("norm target {target} above source level {}", self.level));
        }
        let mut acc = Self::one(self.p, self.level);
        for a in self.relative_group(target) {
            acc = acc.mul_ref(&self.galois(a)?);
        }
        acc.descend(target)
    }

    /// Trace down to `Q_p`, returned as a scalar.
    pub fn trace_to_base(&self) -> Result<Padic> {
        let t = self.trace_to_level(0)?;
        // Tr(zeta_p^i) is p - 1 for i = 0 and -1 otherwise
        let mut s = t.coeffs[0].mul_int(self.p as i64 - 1);
        for c in &t.coeffs[1..] {
            s = &s - c;
        }
        Ok(s)
    }

    /// Sum over the Teichmüller lifts `Delta = mu_{p-1}` acting by `sigma_{omega(a)}`.
    pub fn trace_delta(&self) -> Result<Self> {
        let big = order(self.p, self.level);
        let mut acc = Self::zero(self.p, self.level);
        for a in 1..self.p {
            let w = teichmuller_mod(a, self.p, big);
            acc = acc.add_ref(&self.galois(w as i64)?);
        }
        Ok(acc)
    }

    /// Whether the element is `1 + (something in the maximal ideal)`.
    pub fn is_principal_unit(&self) -> bool {
        if self.min_valuation() < 0 {
            return false;
        }
        let mut s = Padic::exact_zero(self.p);
        for c in &self.coeffs {
            s = &s + c;
        }
        match (s - Padic::one(self.p)).residue(1) {
            Some(r) => r.is_zero(),
            None => false,
        }
    }

    /// p-adic logarithm of a principal unit.
    ///
    /// The element is raised to `p^r` until it lies in `1 + pO`, the series is
    /// summed there and the result divided by `p^r` (losing `r` digits).
    pub fn log(&self) -> Result<Self> {
        if !self.is_principal_unit() {
            return domain("log of a non-principal unit");
        }
        let p = self.p;
        let one = Self::one(p, self.level);
        let mut u = if self.prec() == EXACT { self.with_prec(DEFAULT_PREC) } else { self.clone() };
        let mut r = 0;
        while (u.sub_ref(&one)).min_valuation() < 1 {
            u = u.pow(p);
            r += 1;
            if r > 64 {
                return Err(Error::Convergence("principal unit did not reach 1 + pO".into()));
            }
        }
        let n = u.prec();
        let y = u.sub_ref(&one);
        let vy = y.min_valuation();
        if vy >= n {
            return Ok(Self::zero(p, self.level).with_prec(n - r));
        }
        let mut sum = Self::zero(p, self.level);
        let mut yk = y.clone();
        let mut k: i64 = 1;
        loop {
            let term = yk.map(|c| c.div_int(k));
            sum = if k % 2 == 1 { sum.add_ref(&term) } else { sum.sub_ref(&term) };
            k += 1;
            let mut lg = 0;
            let mut q = 1i64;
            while q < k {
                q *= p as i64;
                lg += 1;
            }
            if k * vy - lg >= n {
                break;
            }
            yk = yk.mul_ref(&y);
        }
        let pr = Padic::exact_int(p, BigInt::from(p).pow(r as u32));
        Ok(sum.with_prec(n).map(|c| c / &pr))
    }

    /// Coordinate-wise comparison; see [`Padic::compare`].
    pub fn compare(&self, o: &Self) -> Verdict {
        self.check(o);
        let mut best = EXACT;
        let mut all_blind = true;
        for (a, b) in self.coeffs.iter().zip(&o.coeffs) {
            match a.compare(b) {
                Verdict::Distinct => return Verdict::Distinct,
                Verdict::EqualTo(n) => {
                    best = best.min(n);
                    all_blind = false;
                }
                Verdict::Undecidable => {}
            }
        }
        if all_blind {
            Verdict::Undecidable
        } else {
            Verdict::EqualTo(best)
        }
    }

    /// Number of agreeing digits, minimised over coordinates.
    pub fn agreement(&self, o: &Self) -> i64 {
        self.check(o);
        self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.agreement(b)).min().unwrap_or(EXACT)
    }
}

/// Teichmüller representative of `a` modulo `m = p^k`, as an integer.
pub fn teichmuller_mod(a: u64, p: u64, m: u64) -> u64 {
    let mut x = a as u128 % m as u128;
    let mut k = 1;
    while (p.pow(k) as u128) < m as u128 {
        k += 1;
    }
    for _ in 0..k {
        let mut y = 1u128;
        for _ in 0..p {
            y = y * x % m as u128;
        }
        x = y;
    }
    x as u64
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.level == o.level && self.compare(o) != Verdict::Distinct
    }
}

impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, o: &CyclotomicElement) -> CyclotomicElement {
        self.add_ref(o)
    }
}

impl Sub for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, o: &CyclotomicElement) -> CyclotomicElement {
        self.sub_ref(o)
    }
}

impl Mul for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, o: &CyclotomicElement) -> CyclotomicElement {
        self.mul_ref(o)
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement::neg(self)
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "zeta^{i}: {c}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CyclotomicElement {
    /// Whether the constant term carries the whole element.
    pub fn scalar_value(&self) -> Option<&Padic> {
        if self.is_scalar() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }
}
