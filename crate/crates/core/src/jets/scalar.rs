use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::padic::Padic;

/// Coefficient ring for [`Jet2`](super::Jet2).
///
/// Constants are built from an existing value (`zero_like`, `embed`) so that
/// rings carrying data, like the prime of a [`Padic`], need no global context.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq {
    fn zero_like(&self) -> Self;
    fn embed(&self, r: &BigRational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` when the value is not a unit of the ring.
    fn inverse(&self) -> Option<Self>;
    /// Zero as far as the ring can tell (to precision, for p-adics).
    fn is_zero_value(&self) -> bool;
    /// Zero with nothing left to carry; such coefficients are dropped.
    fn is_exact_zero(&self) -> bool {
        self.is_zero_value()
    }

    fn one_like(&self) -> Self {
        self.embed(&BigRational::one())
    }

    fn embed_int(&self, n: i64) -> Self {
        self.embed(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn embed(&self, r: &BigRational) -> Self {
        r.clone()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Padic {
    fn zero_like(&self) -> Self {
        Padic::exact_zero(self.prime())
    }
    fn embed(&self, r: &BigRational) -> Self {
        Padic::exact(self.prime(), r.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn negated(&self) -> Self {
        Padic::neg(self)
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn is_exact_zero(&self) -> bool {
        Padic::is_exact_zero(self)
    }
}

/// A monomial: sorted `(name, exponent)` pairs, exponents nonzero.
type Monomial = Vec<(String, i32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<String, i32> = a.iter().cloned().collect();
    for (n, e) in b {
        *m.entry(n.clone()).or_insert(0) += e;
    }
    m.into_iter().filter(|(_, e)| *e != 0).collect()
}

/// Laurent polynomial over `Q` in named indeterminates.
///
/// Exact; a value is invertible here only if it is a single term.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Sym {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Sym {
    pub fn zero() -> Self {
        Sym::default()
    }

    pub fn constant(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Vec::new(), r);
        }
        Sym { terms }
    }

    pub fn int(n: i64) -> Self {
        Sym::constant(BigRational::from_integer(n.into()))
    }

    pub fn ratio(a: i64, b: i64) -> Self {
        Sym::constant(BigRational::new(a.into(), b.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(name.to_string(), 1)], BigRational::one());
        Sym { terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Sym::int(1), |acc, _| acc.times(self))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Names of the indeterminates that occur.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.keys().flatten().map(|(n, _)| n.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Coefficient of `name^1` in an expression linear in `name`, as a
    /// polynomial in the remaining indeterminates.
    pub fn linear_coeff(&self, name: &str) -> Sym {
        let mut out = Sym::zero();
        for (m, c) in &self.terms {
            if m.iter().any(|(n, e)| n == name && *e == 1) {
                let rest: Monomial = m.iter().filter(|(n, _)| n != name).cloned().collect();
                let mut t = BTreeMap::new();
                t.insert(rest, c.clone());
                out = out.plus(&Sym { terms: t });
            }
        }
        out
    }

    /// Replace each listed indeterminate by a value (non-negative powers only).
    pub fn eval<S: Scalar>(&self, env: &[(&str, S)], template: &S) -> Option<S> {
        let mut acc = template.zero_like();
        for (m, c) in &self.terms {
            let mut t = template.embed(c);
            for (n, e) in m {
                let v = env.iter().find(|(k, _)| k == n)?.1.clone();
                let v = if *e < 0 { v.inverse()? } else { v };
                for _ in 0..e.unsigned_abs() {
                    t = t.times(&v);
                }
            }
            acc = acc.plus(&t);
        }
        Some(acc)
    }
}

impl Scalar for Sym {
    fn zero_like(&self) -> Self {
        Sym::zero()
    }
    fn embed(&self, r: &BigRational) -> Self {
        Sym::constant(r.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            let e = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Sym { terms }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = Sym::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mut t = BTreeMap::new();
                t.insert(mono_mul(ma, mb), ca * cb);
                out = out.plus(&Sym { terms: t });
            }
        }
        out
    }
    fn negated(&self) -> Self {
        Sym { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let mut t = BTreeMap::new();
        t.insert(m.iter().map(|(n, e)| (n.clone(), -e)).collect(), c.recip());
        Some(Sym { terms: t })
    }
    fn is_zero_value(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // higher total degree first, then by name
        let mut items: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        items.sort_by_key(|(m, _)| -(m.iter().map(|(_, e)| *e).sum::<i32>()));
        for (i, (m, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || m.is_empty() {
                parts.push(a.to_string());
            }
            for (n, e) in m {
                parts.push(if *e == 1 { n.clone() } else { format!("{n}^{e}") });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
