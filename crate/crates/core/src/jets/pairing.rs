use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::jet::{Jet2, DEFAULT_ORDER};
use super::scalar::{Scalar, Sym};
use crate::error::{Error, Result};

/// An argument of the height-weight pairing: the Tate period `q_A` or a
/// tracked Selmer class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Class {
    Q,
    Sel(String),
}

impl Class {
    pub fn sel(name: &str) -> Self {
        Class::Sel(name.to_string())
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Q => write!(f, "q_A"),
            Class::Sel(n) => write!(f, "{n}"),
        }
    }
}

/// The values the pairing axioms leave free.
///
/// `log_q` is `log_p(q_A)`; each class `x` has `lambda_x = log_A(res_p x)`;
/// a stored pair `(x, y)` has `<x,y> = c {s-1} + w {k-2}`. A pair stored in
/// one order only is extended to the other by the functional equation.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingTable<S: Scalar> {
    pub log_q: S,
    pub order: usize,
    lambdas: BTreeMap<String, S>,
    pairs: BTreeMap<(String, String), (S, S)>,
}

impl<S: Scalar> PairingTable<S> {
    pub fn new(log_q: S) -> Self {
        PairingTable { log_q, order: DEFAULT_ORDER, lambdas: BTreeMap::new(), pairs: BTreeMap::new() }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order.max(2);
        self
    }

    pub fn with_class(mut self, name: &str, lambda: S) -> Self {
        self.lambdas.insert(name.to_string(), lambda);
        self
    }

    /// `<x,y> = c {s-1} + w {k-2}`.
    pub fn with_pair(mut self, x: &str, y: &str, c: S, w: S) -> Self {
        self.pairs.insert((x.to_string(), y.to_string()), (c, w));
        self
    }

    pub fn classes(&self) -> impl Iterator<Item = &String> {
        self.lambdas.keys()
    }

    pub fn lambda(&self, x: &str) -> Result<&S> {
        self.lambdas.get(x).ok_or_else(|| Error::Lookup(format!("class {x} is not tracked")))
    }

    pub fn stored_pairs(&self) -> impl Iterator<Item = (&(String, String), &(S, S))> {
        self.pairs.iter()
    }

    fn tpl(&self) -> &S {
        &self.log_q
    }
}

impl PairingTable<Sym> {
    /// Generic table: `L`, `lambda_x`, and `c_xy`, `w_xy` for `x <= y`.
    pub fn symbolic(classes: &[&str]) -> Self {
        let mut t = PairingTable::new(Sym::var("L"));
        for (i, x) in classes.iter().enumerate() {
            t = t.with_class(x, Sym::var(&format!("lambda_{x}")));
            for y in &classes[i..] {
                t = t.with_pair(x, y, Sym::var(&format!("c_{x}{y}")), Sym::var(&format!("w_{x}{y}")));
            }
        }
        t
    }
}

fn half<S: Scalar>(t: &S) -> S {
    t.embed(&BigRational::new(BigInt::from(1), BigInt::from(2)))
}

/// `{s - k/2} = {s-1} - 1/2 {k-2}`.
pub fn s_minus_half_k<S: Scalar>(template: &S, order: usize) -> Jet2<S> {
    Jet2::s(template, order).sub(&Jet2::k(template, order).scale(&half(template)))
}

/// `<x, y>` as a class in `J/J^2`.
pub fn hw_pairing<S: Scalar>(x: &Class, y: &Class, table: &PairingTable<S>) -> Result<Jet2<S>> {
    let d = table.order;
    let t = table.tpl();
    match (x, y) {
        (Class::Q, Class::Q) => Ok(s_minus_half_k(t, d).scale(&table.log_q)),
        (Class::Q, Class::Sel(z)) => Ok(Jet2::s(t, d).scale(table.lambda(z)?)),
        (Class::Sel(_), Class::Q) => Ok(hw_pairing(y, x, table)?.reflect().neg()),
        (Class::Sel(a), Class::Sel(b)) => {
            table.lambda(a)?;
            table.lambda(b)?;
            if let Some((c, w)) = table.pairs.get(&(a.clone(), b.clone())) {
                Ok(Jet2::s(t, d).scale(c).add(&Jet2::k(t, d).scale(w)))
            } else if let Some((c, w)) = table.pairs.get(&(b.clone(), a.clone())) {
                let yx = Jet2::s(t, d).scale(c).add(&Jet2::k(t, d).scale(w));
                Ok(yx.reflect().neg())
            } else {
                Err(Error::Lookup(format!("no table entry for <{a},{b}>")))
            }
        }
    }
}

/// The extended height-weight of `x`: the determinant of the Gram matrix of
/// `(q_A, x)`, computed in the jet ring and reduced mod `J^3`.
pub fn extended_height<S: Scalar>(x: &str, table: &PairingTable<S>) -> Result<Jet2<S>> {
    let (q, z) = (Class::Q, Class::sel(x));
    let qq = hw_pairing(&q, &q, table)?;
    let qz = hw_pairing(&q, &z, table)?;
    let zq = hw_pairing(&z, &q, table)?;
    let zz = hw_pairing(&z, &z, table)?;
    Ok(qq.mul(&zz).sub(&qz.mul(&zq)).truncate(2))
}

/// The central critical pairing `<x,y>(k, k/2)`.
pub fn central_pairing<S: Scalar>(x: &Class, y: &Class, table: &PairingTable<S>) -> Result<Jet2<S>> {
    Ok(hw_pairing(x, y, table)?.at_central_line())
}

/// One consequence of `<y,x>(k,s) = -<x,y>(k,k-s)`: the scalars listed must
/// vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct FeRelation<S: Scalar> {
    pub x: Class,
    pub y: Class,
    /// Coefficient of `{s-1}` in `<y,x> + <x,y>(k,k-s)`.
    pub on_s: S,
    /// Coefficient of `{k-2}`.
    pub on_k: S,
}

impl<S: Scalar> FeRelation<S> {
    pub fn holds(&self) -> bool {
        self.on_s.is_zero_value() && self.on_k.is_zero_value()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeReport<S: Scalar> {
    pub relations: Vec<FeRelation<S>>,
}

impl<S: Scalar> FeReport<S> {
    pub fn is_consistent(&self) -> bool {
        self.relations.iter().all(FeRelation::holds)
    }

    pub fn violations(&self) -> Vec<&FeRelation<S>> {
        self.relations.iter().filter(|r| !r.holds()).collect()
    }

    /// `Ok` if consistent, otherwise a validation error listing the failures.
    pub fn check(&self) -> Result<()> {
        let bad = self.violations();
        if bad.is_empty() {
            return Ok(());
        }
        let msg: Vec<String> =
            bad.iter().map(|r| format!("<{},{}>: {{s-1}} {}, {{k-2}} {}", r.x, r.y, r.on_s, r.on_k)).collect();
        Err(Error::Validation(format!("functional equation violated: {}", msg.join("; "))))
    }
}

/// Impose the functional equation on every stored entry (and on `<q_A,q_A>`).
///
/// On a generic diagonal entry `c {s-1} + w {k-2}` the only surviving
/// relation is `c + 2w = 0` on `{k-2}`.
pub fn functional_equation_constraint<S: Scalar>(table: &PairingTable<S>) -> Result<FeReport<S>> {
    let mut pairs = vec![(Class::Q, Class::Q)];
    for (a, b) in table.pairs.keys() {
        if a == b || (a < b && table.pairs.contains_key(&(b.clone(), a.clone()))) {
            pairs.push((Class::sel(a), Class::sel(b)));
        }
    }
    let mut relations = Vec::new();
    for (x, y) in pairs {
        let xy = hw_pairing(&x, &y, table)?;
        let yx = hw_pairing(&y, &x, table)?;
        let r = yx.add(&xy.reflect());
        relations.push(FeRelation { x, y, on_s: r.coeff(0, 1), on_k: r.coeff(1, 0) });
    }
    Ok(FeReport { relations })
}
