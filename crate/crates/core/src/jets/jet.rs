use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::scalar::Scalar;
use crate::error::{domain, Error, Result};

pub const DEFAULT_ORDER: usize = 3;

/// Truncated Taylor expansion at `(k, s) = (2, 1)`.
///
/// `coeffs[(i, j)]` multiplies `(k-2)^i (s-1)^j`; everything of total degree
/// above `order` is dropped, so the ring is `A / J^(order+1)` with `J` the
/// ideal of functions vanishing at the centre.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<S: Scalar> {
    order: usize,
    zero: S,
    coeffs: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> Jet2<S> {
    pub fn zero(template: &S, order: usize) -> Self {
        Jet2 { order, zero: template.zero_like(), coeffs: BTreeMap::new() }
    }

    pub fn constant(c: S, order: usize) -> Self {
        Jet2::zero(&c, order).with_coeff(0, 0, c)
    }

    /// `k - 2`.
    pub fn k(template: &S, order: usize) -> Self {
        Jet2::zero(template, order).with_coeff(1, 0, template.one_like())
    }

    /// `s - 1`.
    pub fn s(template: &S, order: usize) -> Self {
        Jet2::zero(template, order).with_coeff(0, 1, template.one_like())
    }

    /// `c (k-2)^i (s-1)^j`.
    pub fn monomial(c: S, i: usize, j: usize, order: usize) -> Self {
        Jet2::zero(&c, order).with_coeff(i, j, c)
    }

    pub fn from_coeffs(template: &S, order: usize, entries: impl IntoIterator<Item = ((usize, usize), S)>) -> Self {
        let mut out = Jet2::zero(template, order);
        for ((i, j), c) in entries {
            let old = out.coeff(i, j);
            out = out.with_coeff(i, j, old.plus(&c));
        }
        out
    }

    fn with_coeff(mut self, i: usize, j: usize, c: S) -> Self {
        if i + j <= self.order {
            if c.is_exact_zero() {
                self.coeffs.remove(&(i, j));
            } else {
                self.coeffs.insert((i, j), c);
            }
        }
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn template(&self) -> &S {
        &self.zero
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Nonzero terms in `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &S)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero_value())
    }

    /// Lowest total degree with a nonzero coefficient (`None` for zero).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero_value()).map(|((i, j), _)| i + j).min()
    }

    /// Whether the jet lies in `J^a`.
    pub fn in_ideal(&self, a: usize) -> bool {
        self.valuation().map_or(true, |v| v >= a)
    }

    /// The part of total degree `a`: the class in `J^a / J^(a+1)` of a jet in `J^a`.
    pub fn homogeneous(&self, a: usize) -> Self {
        let mut out = Jet2::zero(&self.zero, self.order);
        for (&(i, j), c) in &self.coeffs {
            if i + j == a {
                out.coeffs.insert((i, j), c.clone());
            }
        }
        out
    }

    /// Reduce modulo `J^(order+1)` for a smaller order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Jet2::zero(&self.zero, order);
        for (&(i, j), c) in &self.coeffs {
            out = out.with_coeff(i, j, c.clone());
        }
        out
    }

    /// `d^i/dk^i d^j/ds^j` at the centre: `i! j! c_ij`.
    pub fn derivative(&self, i: usize, j: usize) -> S {
        let f = |n: usize| (1..=n as i64).product::<i64>();
        self.coeff(i, j).times(&self.zero.embed_int(f(i) * f(j)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.truncate(self.order.min(o.order));
        for (&(i, j), c) in &o.coeffs {
            let v = out.coeff(i, j).plus(c);
            out = out.with_coeff(i, j, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Jet2 { order: self.order, zero: self.zero.clone(), coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.negated())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut acc: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (&(i, j), a) in &self.coeffs {
            for (&(k, l), b) in &o.coeffs {
                if i + j + k + l > order {
                    continue;
                }
                let e = acc.entry((i + k, j + l)).or_insert_with(|| self.zero.clone());
                *e = e.plus(&a.times(b));
            }
        }
        Jet2::from_coeffs(&self.zero, order, acc)
    }

    pub fn scale(&self, c: &S) -> Self {
        Jet2::from_coeffs(&self.zero, self.order, self.coeffs.iter().map(|(k, v)| (*k, v.times(c))))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Jet2::constant(self.zero.one_like(), self.order), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse of a jet with invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0, 0);
        let inv = c0.inverse().ok_or_else(|| Error::Domain(format!("constant term {c0} is not invertible")))?;
        // 1/(c0 (1 + n)) = c0^-1 sum (-n)^m, n nilpotent
        let n = self.scale(&inv).sub(&Jet2::constant(self.zero.one_like(), self.order));
        let mut acc = Jet2::constant(self.zero.one_like(), self.order);
        let mut term = acc.clone();
        for _ in 0..self.order {
            term = term.mul(&n.neg());
            acc = acc.add(&term);
        }
        Ok(acc.scale(&inv))
    }

    /// The ring map fixing constants with `k-2 -> ku`, `s-1 -> su`; both
    /// images must lie in `J`.
    pub fn substitute(&self, ku: &Self, su: &Self) -> Result<Self> {
        if !ku.in_ideal(1) || !su.in_ideal(1) {
            return domain("substituted values must vanish at the centre");
        }
        let order = self.order.min(ku.order).min(su.order);
        let one = Jet2::constant(self.zero.one_like(), order);
        let kp: Vec<Self> = std::iter::successors(Some(one.clone()), |x| Some(x.mul(ku))).take(order + 1).collect();
        let sp: Vec<Self> = std::iter::successors(Some(one), |x| Some(x.mul(su))).take(order + 1).collect();
        let mut out = Jet2::zero(&self.zero, order);
        for (&(i, j), c) in &self.coeffs {
            if i + j > order {
                continue;
            }
            out = out.add(&kp[i].mul(&sp[j]).scale(c));
        }
        Ok(out)
    }

    /// Restriction to the central critical line `s = k/2`, as a jet in `k - 2`.
    pub fn at_central_line(&self) -> Self {
        let half = self.zero.embed(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        let k = Jet2::k(&self.zero, self.order);
        self.substitute(&k, &k.scale(&half)).expect("images lie in J")
    }

    /// Restriction to `k = 2`, as a jet in `s - 1`.
    pub fn at_weight_two(&self) -> Self {
        let z = Jet2::zero(&self.zero, self.order);
        self.substitute(&z, &Jet2::s(&self.zero, self.order)).expect("images lie in J")
    }

    /// Restriction to `s = 1`, as a jet in `k - 2`.
    pub fn at_s_one(&self) -> Self {
        let z = Jet2::zero(&self.zero, self.order);
        self.substitute(&Jet2::k(&self.zero, self.order), &z).expect("images lie in J")
    }

    /// `(k, s) -> (k, k - s)`, i.e. `s - 1 -> (k-2) - (s-1)`.
    pub fn reflect(&self) -> Self {
        let k = Jet2::k(&self.zero, self.order);
        let s = Jet2::s(&self.zero, self.order);
        self.substitute(&k, &k.sub(&s)).expect("images lie in J")
    }

    /// Only powers of `k - 2` occur.
    pub fn is_in_k_only(&self) -> bool {
        self.coeffs.iter().all(|((_, j), c)| *j == 0 || c.is_zero_value())
    }

    pub fn is_in_s_only(&self) -> bool {
        self.coeffs.iter().all(|((i, _), c)| *i == 0 || c.is_zero_value())
    }
}

/// `exp(x) - 1` truncated, for `x` in `J`.
pub fn exp_minus_one<S: Scalar>(x: &Jet2<S>) -> Result<Jet2<S>> {
    if !x.in_ideal(1) {
        return domain("exp is only expanded on J");
    }
    let t = x.template();
    let mut acc = Jet2::zero(t, x.order());
    let mut term = Jet2::constant(t.one_like(), x.order());
    for n in 1..=x.order() {
        term = term.mul(x).scale(&t.embed(&BigRational::new(BigInt::from(1), BigInt::from(n as i64))));
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl<S: Scalar> fmt::Display for Jet2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut keys: Vec<&(usize, usize)> = self.coeffs.keys().collect();
        keys.sort_by_key(|(i, j)| (i + j, std::cmp::Reverse(*j)));
        for key in keys {
            let c = &self.coeffs[key];
            if c.is_zero_value() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let (i, j) = *key;
            let mono = |name: &str, e: usize| match e {
                0 => String::new(),
                1 => format!("*{{{name}}}"),
                e => format!("*{{{name}}}^{e}"),
            };
            write!(f, "({c}){}{}", mono("s-1", j), mono("k-2", i))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", self.order + 1)
    }
}
