use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Precision reported for exact values.
pub const EXACT: i64 = i64::MAX;

thread_local! {
    static POWERS: RefCell<HashMap<(u64, u32), BigInt>> = RefCell::new(HashMap::new());
}

/// `p^k` as a big integer, memoised per thread.
pub fn ppow(p: u64, k: i64) -> BigInt {
    assert!(k >= 0, "negative exponent {k}");
    let k = k as u32;
    if k < 4 {
        return BigInt::from(p).pow(k);
    }
    POWERS.with(|c| {
        c.borrow_mut()
            .entry((p, k))
            .or_insert_with(|| BigInt::from(p).pow(k))
            .clone()
    })
}

/// p-adic valuation of a nonzero integer, with the cofactor.
pub fn split_p(x: &BigInt, p: u64) -> (i64, BigInt) {
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return (v, y);
        }
        y = q;
        v += 1;
    }
}

pub fn val_int(x: &BigInt, p: u64) -> i64 {
    if x.is_zero() {
        EXACT
    } else {
        split_p(x, p).0
    }
}

pub fn val_rat(r: &BigRational, p: u64) -> i64 {
    if r.is_zero() {
        EXACT
    } else {
        val_int(r.numer(), p) - val_int(r.denom(), p)
    }
}

/// Inverse of `a` modulo `m`, for `gcd(a, m) = 1`.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible modulo {m}");
    e.x.mod_floor(m)
}

#[derive(Clone, Debug)]
enum Repr {
    /// An exactly known rational number (possibly zero).
    Exact(BigRational),
    /// Zero modulo `p^n`.
    Zero(i64),
    /// `u * p^v + O(p^n)`, with `0 < u < p^(n-v)` and `p` not dividing `u`.
    Val { v: i64, u: BigInt, n: i64 },
}

/// An element of `Q_p`, either exact or known modulo a power of `p`.
#[derive(Clone, Debug)]
pub struct Padic {
    p: u64,
    repr: Repr,
}

/// Result of comparing two p-adic numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Congruent modulo `p^n` (`n == EXACT` for exact equality).
    EqualTo(i64),
    Distinct,
    /// Neither operand carries a significant digit, so nothing can be said.
    Undecidable,
}

impl Padic {
    fn check_prime(p: u64) {
        assert!(p >= 2, "p must be a prime, got {p}");
    }

    pub fn exact(p: u64, r: BigRational) -> Self {
        Self::check_prime(p);
        Padic { p, repr: Repr::Exact(r) }
    }

    pub fn exact_int(p: u64, n: impl Into<BigInt>) -> Self {
        Self::exact(p, BigRational::from_integer(n.into()))
    }

    pub fn exact_zero(p: u64) -> Self {
        Self::exact(p, BigRational::zero())
    }

    pub fn one(p: u64) -> Self {
        Self::exact(p, BigRational::one())
    }

    pub fn zero_to(p: u64, n: i64) -> Self {
        Self::check_prime(p);
        Padic { p, repr: Repr::Zero(n) }
    }

    /// `x * p^v + O(p^n)` for an arbitrary integer `x`.
    pub fn from_scaled(p: u64, v: i64, x: BigInt, n: i64) -> Self {
        Self::check_prime(p);
        if v >= n || x.is_zero() {
            return Padic { p, repr: Repr::Zero(n) };
        }
        let (w, y) = split_p(&x, p);
        let v = v + w;
        if v >= n {
            return Padic { p, repr: Repr::Zero(n) };
        }
        let u = y.mod_floor(&ppow(p, n - v));
        Padic { p, repr: Repr::Val { v, u, n } }
    }

    pub fn from_int(p: u64, x: impl Into<BigInt>, n: i64) -> Self {
        Self::from_scaled(p, 0, x.into(), n)
    }

    pub fn from_rational(p: u64, r: &BigRational, n: i64) -> Self {
        Self::exact(p, r.clone()).with_prec(n)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Absolute precision; `EXACT` for exact values.
    pub fn prec(&self) -> i64 {
        match &self.repr {
            Repr::Exact(_) => EXACT,
            Repr::Zero(n) => *n,
            Repr::Val { n, .. } => *n,
        }
    }

    /// Valuation. For zero-to-precision this is the precision (a lower bound);
    /// for exact zero it is `EXACT`.
    pub fn valuation(&self) -> i64 {
        match &self.repr {
            Repr::Exact(r) => val_rat(r, self.p),
            Repr::Zero(n) => *n,
            Repr::Val { v, .. } => *v,
        }
    }

    /// Number of significant p-adic digits.
    pub fn relative_prec(&self) -> i64 {
        match &self.repr {
            Repr::Exact(_) => EXACT,
            Repr::Zero(_) => 0,
            Repr::Val { v, n, .. } => n - v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(&self.repr, Repr::Exact(r) if r.is_zero())
    }

    /// Zero, exactly or to its precision.
    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Exact(r) => r.is_zero(),
            Repr::Zero(_) => true,
            Repr::Val { .. } => false,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.valuation() >= 0
    }

    /// Drop precision to at most `n`. Exact values become inexact.
    pub fn with_prec(&self, n: i64) -> Self {
        let p = self.p;
        match &self.repr {
            Repr::Exact(r) => {
                if r.is_zero() {
                    return Padic::zero_to(p, n);
                }
                let (a, x) = split_p(r.numer(), p);
                let (b, y) = split_p(r.denom(), p);
                let v = a - b;
                if v >= n {
                    return Padic::zero_to(p, n);
                }
                let m = ppow(p, n - v);
                let u = (x * inv_mod(&y, &m)).mod_floor(&m);
                Padic { p, repr: Repr::Val { v, u, n } }
            }
            Repr::Zero(m) => Padic::zero_to(p, n.min(*m)),
            Repr::Val { v, u, n: m } => {
                if n >= *m {
                    self.clone()
                } else {
                    Padic::from_scaled(p, *v, u.clone(), n)
                }
            }
        }
    }

    /// An integer representative `r` with `self = r * p^shift + O(p^prec)`,
    /// where `shift = min(valuation, 0)`. Returns `(r, shift)`.
    pub fn lift(&self) -> (BigInt, i64) {
        match &self.repr {
            Repr::Exact(_) => panic!("lift of an exact value"),
            Repr::Zero(_) => (BigInt::zero(), 0),
            Repr::Val { v, u, .. } => {
                if *v >= 0 {
                    (u * ppow(self.p, *v), 0)
                } else {
                    (u.clone(), *v)
                }
            }
        }
    }

    /// The rational number `u * p^v` represented (exact values as is).
    pub fn to_rational(&self) -> BigRational {
        match &self.repr {
            Repr::Exact(r) => r.clone(),
            Repr::Zero(_) => BigRational::zero(),
            Repr::Val { v, u, .. } => {
                if *v >= 0 {
                    BigRational::from_integer(u * ppow(self.p, *v))
                } else {
                    BigRational::new(u.clone(), ppow(self.p, -*v))
                }
            }
        }
    }

    /// Residue in `Z / p^k` for an integral value known to at least `p^k`.
    pub fn residue(&self, k: i64) -> Option<BigInt> {
        if self.valuation() < 0 || self.prec() < k {
            return None;
        }
        let m = ppow(self.p, k);
        match &self.repr {
            Repr::Exact(r) => {
                let d = inv_mod(r.denom(), &m);
                Some((r.numer() * d).mod_floor(&m))
            }
            Repr::Zero(_) => Some(BigInt::zero()),
            Repr::Val { v, u, .. } => Some((u * ppow(self.p, *v)).mod_floor(&m)),
        }
    }

    /// `(v, u, n)` for inexact nonzero values, a generic view for printing.
    fn parts(&self) -> Option<(i64, BigInt, i64)> {
        match &self.repr {
            Repr::Val { v, u, n } => Some((*v, u.clone(), *n)),
            _ => None,
        }
    }

    /// Unit part `u` with `self = p^v * u`, keeping relative precision.
    pub fn unit_part(&self) -> Result<Padic> {
        match &self.repr {
            Repr::Exact(r) => {
                if r.is_zero() {
                    return Err(Error::Domain("unit part of zero".into()));
                }
                let v = val_rat(r, self.p);
                Ok(Padic::exact(self.p, r * pow_rat(self.p, -v)))
            }
            Repr::Zero(_) => Err(Error::Domain("unit part of zero to precision".into())),
            Repr::Val { v, u, n } => Ok(Padic { p: self.p, repr: Repr::Val { v: 0, u: u.clone(), n: n - v } }),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        match &self.repr {
            Repr::Exact(r) => Padic::exact(p, -r),
            Repr::Zero(n) => Padic::zero_to(p, *n),
            Repr::Val { v, u, n } => {
                let m = ppow(p, n - v);
                Padic { p, repr: Repr::Val { v: *v, u: (&m - u).mod_floor(&m), n: *n } }
            }
        }
    }

    pub fn add_ref(&self, o: &Padic) -> Padic {
        assert_eq!(self.p, o.p, "mixed primes");
        let p = self.p;
        match (&self.repr, &o.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => return Padic::exact(p, a + b),
            (Repr::Exact(a), _) if a.is_zero() => return o.clone(),
            (_, Repr::Exact(b)) if b.is_zero() => return self.clone(),
            (Repr::Exact(_), _) => return self.with_prec(o.prec()).add_ref(o),
            (_, Repr::Exact(_)) => return self.add_ref(&o.with_prec(self.prec())),
            _ => {}
        }
        let n = self.prec().min(o.prec());
        match (self.parts(), o.parts()) {
            (None, None) => Padic::zero_to(p, n),
            (Some(_), None) => self.with_prec(n),
            (None, Some(_)) => o.with_prec(n),
            (Some((va, ua, _)), Some((vb, ub, _))) => {
                let v = va.min(vb);
                if v >= n {
                    return Padic::zero_to(p, n);
                }
                let mut x = BigInt::zero();
                if va < n {
                    x += ua * ppow(p, va - v);
                }
                if vb < n {
                    x += ub * ppow(p, vb - v);
                }
                Padic::from_scaled(p, v, x, n)
            }
        }
    }

    pub fn sub_ref(&self, o: &Padic) -> Padic {
        self.add_ref(&o.neg())
    }

    pub fn mul_ref(&self, o: &Padic) -> Padic {
        assert_eq!(self.p, o.p, "mixed primes");
        let p = self.p;
        match (&self.repr, &o.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => return Padic::exact(p, a * b),
            (Repr::Exact(a), _) if a.is_zero() => return self.clone(),
            (_, Repr::Exact(b)) if b.is_zero() => return o.clone(),
            (Repr::Exact(a), _) => return o.mul_rational(a),
            (_, Repr::Exact(b)) => return self.mul_rational(b),
            _ => {}
        }
        let (va, vb) = (self.valuation(), o.valuation());
        let n = (va + o.prec()).min(vb + self.prec());
        match (self.parts(), o.parts()) {
            (Some((va, ua, _)), Some((vb, ub, _))) => {
                let v = va + vb;
                if v >= n {
                    return Padic::zero_to(p, n);
                }
                let u = (ua * ub).mod_floor(&ppow(p, n - v));
                Padic { p, repr: Repr::Val { v, u, n } }
            }
            _ => Padic::zero_to(p, n),
        }
    }

    /// Multiply an inexact value by an exact rational.
    fn mul_rational(&self, r: &BigRational) -> Padic {
        let p = self.p;
        if r.is_zero() {
            return Padic::exact_zero(p);
        }
        let vr = val_rat(r, p);
        match &self.repr {
            Repr::Exact(a) => Padic::exact(p, a * r),
            Repr::Zero(n) => Padic::zero_to(p, n + vr),
            Repr::Val { v, u, n } => {
                let m = ppow(p, n - v);
                let (_, x) = split_p(r.numer(), p);
                let (_, y) = split_p(r.denom(), p);
                let u = (u * x * inv_mod(&y, &m)).mod_floor(&m);
                Padic { p, repr: Repr::Val { v: v + vr, u, n: n + vr } }
            }
        }
    }

    pub fn mul_int(&self, k: i64) -> Padic {
        self.mul_rational(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn div_int(&self, k: i64) -> Padic {
        assert!(k != 0, "division by zero");
        self.mul_rational(&BigRational::new(BigInt::one(), BigInt::from(k)))
    }

    pub fn mul_big(&self, k: &BigInt) -> Padic {
        self.mul_rational(&BigRational::from_integer(k.clone()))
    }

    pub fn inv(&self) -> Result<Padic> {
        let p = self.p;
        match &self.repr {
            Repr::Exact(r) => {
                if r.is_zero() {
                    Err(Error::Domain("inverse of exact zero".into()))
                } else {
                    Ok(Padic::exact(p, r.recip()))
                }
            }
            Repr::Zero(n) => Err(Error::Precision(format!("inverse of zero modulo {p}^{n}"))),
            Repr::Val { v, u, n } => {
                let rel = n - v;
                let u = inv_mod(u, &ppow(p, rel));
                Ok(Padic { p, repr: Repr::Val { v: -v, u, n: rel - v } })
            }
        }
    }

    pub fn try_div(&self, o: &Padic) -> Result<Padic> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Padic {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut result = Padic::one(self.p);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Three-valued comparison up to the smaller precision.
    pub fn compare(&self, o: &Padic) -> Verdict {
        let d = self.sub_ref(o);
        match &d.repr {
            Repr::Exact(r) => {
                if r.is_zero() {
                    Verdict::EqualTo(EXACT)
                } else {
                    Verdict::Distinct
                }
            }
            Repr::Val { .. } => Verdict::Distinct,
            Repr::Zero(n) => {
                let blind = |x: &Padic| matches!(x.repr, Repr::Zero(_));
                if blind(self) && blind(o) {
                    Verdict::Undecidable
                } else {
                    Verdict::EqualTo(*n)
                }
            }
        }
    }

    /// Number of agreeing p-adic digits: the valuation of the difference,
    /// capped at the common precision.
    pub fn agreement(&self, o: &Padic) -> i64 {
        self.sub_ref(o).valuation()
    }

    /// p-adic digits `a_v, ..., a_{n-1}` of an inexact value, with `v`.
    pub fn digits(&self) -> (i64, Vec<u64>) {
        match &self.repr {
            Repr::Val { v, u, n } => {
                let mut out = Vec::with_capacity((n - v) as usize);
                let pb = BigInt::from(self.p);
                let mut x = u.clone();
                for _ in *v..*n {
                    let (q, r) = x.div_rem(&pb);
                    out.push(r.to_u64().unwrap());
                    x = q;
                }
                (*v, out)
            }
            _ => (0, Vec::new()),
        }
    }
}

pub(crate) fn pow_rat(p: u64, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(ppow(p, e))
    } else {
        BigRational::new(BigInt::one(), ppow(p, -e))
    }
}

impl PartialEq for Padic {
    /// Congruence to the smaller precision (see [`Padic::compare`]).
    fn eq(&self, o: &Padic) -> bool {
        self.p == o.p && self.compare(o) != Verdict::Distinct
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Padic> for &Padic {
            type Output = Padic;
            fn $m(self, o: &Padic) -> Padic {
                self.$f(o)
            }
        }
        impl $tr<Padic> for Padic {
            type Output = Padic;
            fn $m(self, o: Padic) -> Padic {
                self.$f(&o)
            }
        }
        impl $tr<&Padic> for Padic {
            type Output = Padic;
            fn $m(self, o: &Padic) -> Padic {
                self.$f(o)
            }
        }
        impl $tr<Padic> for &Padic {
            type Output = Padic;
            fn $m(self, o: Padic) -> Padic {
                self.$f(&o)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Div<&Padic> for &Padic {
    type Output = Padic;
    /// Panics on division by zero; see [`Padic::try_div`].
    fn div(self, o: &Padic) -> Padic {
        self.try_div(o).expect("p-adic division by zero")
    }
}

impl Div<Padic> for Padic {
    type Output = Padic;
    fn div(self, o: Padic) -> Padic {
        &self / &o
    }
}

impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        Padic::neg(&self)
    }
}

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        Padic::neg(self)
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_padic(self, f)
    }
}
