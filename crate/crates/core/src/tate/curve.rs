use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Standard invariants of a Weierstrass model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub disc: BigInt,
}

impl Invariants {
    pub fn of(a: &[BigInt; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - 24 * &b4;
        let b2cube: BigInt = &b2 * &b2 * &b2;
        let c6: BigInt = 36 * &b2 * &b4 - 216 * &b6 - b2cube;
        let b2b2b8: BigInt = &b2 * &b2 * &b8;
        let disc: BigInt = -b2b2b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        Invariants { b2, b4, b6, b8, c4, c6, disc }
    }
}

/// An elliptic curve over Q given by an integral Weierstrass model
/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
///
/// The model is assumed minimal. Frobenius traces are memoised in a shared
/// append-only cache.
#[derive(Clone, Debug)]
pub struct CurveData {
    label: String,
    a: [BigInt; 5],
    inv: Invariants,
    cache: Arc<RwLock<HashMap<u64, i64>>>,
}

impl PartialEq for CurveData {
    fn eq(&self, o: &Self) -> bool {
        self.label == o.label && self.a == o.a
    }
}

impl CurveData {
    pub fn new(label: impl Into<String>, a: [BigInt; 5]) -> Result<Self> {
        let inv = Invariants::of(&a);
        if inv.disc.is_zero() {
            return Err(Error::Validation("singular curve: discriminant is 0".into()));
        }
        Ok(CurveData { label: label.into(), a, inv, cache: Arc::new(RwLock::new(HashMap::new())) })
    }

    pub fn from_ints(label: impl Into<String>, a: [i64; 5]) -> Result<Self> {
        Self::new(label, a.map(BigInt::from))
    }

    /// Accepts rational coefficients as long as they are integers.
    pub fn from_rationals(label: impl Into<String>, a: [BigRational; 5]) -> Result<Self> {
        let mut out: [BigInt; 5] = Default::default();
        for (i, x) in a.iter().enumerate() {
            if !x.is_integer() {
                return Err(Error::Validation(format!("a{} = {x} is not integral; an integral minimal model is required", [1, 2, 3, 4, 6][i])));
            }
            out[i] = x.to_integer();
        }
        Self::new(label, out)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn a(&self) -> &[BigInt; 5] {
        &self.a
    }

    pub fn invariants(&self) -> &Invariants {
        &self.inv
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.inv.disc
    }

    /// `j = c4^3 / Delta`.
    pub fn j_invariant(&self) -> BigRational {
        let c4 = &self.inv.c4;
        BigRational::new(c4 * c4 * c4, self.inv.disc.clone())
    }

    /// Primes dividing the discriminant, in increasing order.
    pub fn bad_primes(&self) -> Vec<u64> {
        factor(&self.inv.disc.abs()).into_iter().map(|(q, _)| q).collect()
    }

    /// Conductor of a semistable curve (squarefree product of bad primes).
    /// Errors at primes of additive reduction, where this crate has no
    /// conductor algorithm.
    pub fn conductor(&self) -> Result<u64> {
        let mut n: u64 = 1;
        for q in self.bad_primes() {
            if (&self.inv.c4 % BigInt::from(q)).is_zero() {
                return Err(Error::Domain(format!(
                    "{}: additive reduction at {q}; only semistable curves are supported",
                    self.label
                )));
            }
            n = n.checked_mul(q).ok_or_else(|| Error::Domain("conductor overflows u64".into()))?;
        }
        Ok(n)
    }

    pub fn is_on_curve(&self, x: &BigRational, y: &BigRational) -> bool {
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|v| rat(&v));
        let lhs = y * y + &a1 * x * y + &a3 * y;
        let rhs = x * x * x + &a2 * x * x + &a4 * x + &a6;
        lhs == rhs
    }

    /// `a_l`, from the memo cache or by counting points.
    pub fn a_ell(&self, l: u64) -> i64 {
        if let Some(v) = self.cache.read().expect("a_l cache poisoned").get(&l) {
            return *v;
        }
        let v = super::reduction::trace_by_counting(self, l);
        self.cache.write().expect("a_l cache poisoned").entry(l).or_insert(v);
        v
    }

    pub(crate) fn cache_many(&self, vals: &[(u64, i64)]) {
        let mut c = self.cache.write().expect("a_l cache poisoned");
        for (l, v) in vals {
            c.entry(*l).or_insert(*v);
        }
    }

    pub(crate) fn cached(&self, l: u64) -> Option<i64> {
        self.cache.read().expect("a_l cache poisoned").get(&l).copied()
    }

    /// Reduce the coefficients modulo `l`.
    pub(crate) fn a_mod(&self, l: u64) -> [u64; 5] {
        let m = BigInt::from(l);
        self.a.clone().map(|v| v.mod_floor(&m).to_u64().unwrap())
    }
}

impl fmt::Display for CurveData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "{} [{a1},{a2},{a3},{a4},{a6}]", self.label)
    }
}

/// Trial-division factorisation (the discriminants here are small).
pub fn factor(n: &BigInt) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while n > BigInt::one() {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            let q = n.to_u64().expect("prime factor beyond u64");
            out.push((q, 1));
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
        assert!(d <= 50_000_000, "cofactor {n} too large to factor by trial division");
    }
    out
}

/// A rational point on a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine(BigRational, BigRational),
}

impl Point {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::Affine(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }
}

impl CurveData {
    pub fn validate_point(&self, pt: &Point) -> Result<()> {
        match pt {
            Point::Infinity => Ok(()),
            Point::Affine(x, y) => {
                if self.is_on_curve(x, y) {
                    Ok(())
                } else {
                    Err(Error::Validation(format!("({x}, {y}) is not on {}", self.label)))
                }
            }
        }
    }

    pub fn neg_point(&self, pt: &Point) -> Point {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let [a1, _, a3, _, _] = self.a.clone().map(|v| rat(&v));
                Point::Affine(x.clone(), -y - a1 * x - a3)
            }
        }
    }

    pub fn add_points(&self, p1: &Point, p2: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p1, p2) {
            (Point::Infinity, _) => return p2.clone(),
            (_, Point::Infinity) => return p1.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, _] = self.a.clone().map(|v| rat(&v));
        let lambda = if x1 == x2 {
            let denom = BigRational::from_integer(2.into()) * y1 + &a1 * x1 + &a3;
            if (y1 + y2 + &a1 * x2 + &a3).is_zero() || denom.is_zero() {
                return Point::Infinity;
            }
            (BigRational::from_integer(3.into()) * x1 * x1 + BigRational::from_integer(2.into()) * &a2 * x1 + &a4
                - &a1 * y1)
                / denom
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &a1 * &lambda - &a2 - x1 - x2;
        let y3 = -(&lambda + &a1) * &x3 - &nu - &a3;
        Point::Affine(x3, y3)
    }

    pub fn mul_point(&self, k: i64, pt: &Point) -> Point {
        let mut acc = Point::Infinity;
        let mut base = if k < 0 { self.neg_point(pt) } else { pt.clone() };
        let mut k = k.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_points(&base, &base);
            }
        }
        acc
    }

    /// Order of a torsion point (at most 12 over Q), or `None`.
    pub fn torsion_order(&self, pt: &Point) -> Option<u32> {
        let mut q = pt.clone();
        for k in 1..=12 {
            if q == Point::Infinity {
                return Some(k);
            }
            // integrality is necessary for torsion (Nagell-Lutz on integral models)
            if let Point::Affine(x, _) = &q {
                if !x.is_integer() && !(x * BigRational::from_integer(4.into())).is_integer() {
                    return None;
                }
            }
            q = self.add_points(&q, pt);
        }
        if q == Point::Infinity {
            Some(13)
        } else {
            None
        }
    }
}
