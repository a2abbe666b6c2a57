use num_complex::Complex64;

use super::cyclotomic::{teichmuller_mod, CyclotomicElement};
use crate::error::{domain, Result};

/// A character of `(Z/p^(m+1))^*` of p-power order, trivial on the
/// Teichmüller component, with `chi(1+p) = zeta_{p^m}^k`.
///
/// Values are stored as exponents: `chi(a) = zeta_{p^m}^{index(a)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicCharacter {
    p: u64,
    m: u32,
    k: u64,
    table: Vec<Option<u64>>,
}

impl PadicCharacter {
    /// The character of conductor `p^(m+1)` sending `1+p` to `zeta_{p^m}^k`.
    /// Requires `m >= 1` and `p` not dividing `k`.
    pub fn new(p: u64, m: u32, k: u64) -> Result<Self> {
        if m == 0 {
            return domain("a nontrivial character of p-power order has conductor at least p^2");
        }
        if k % p == 0 {
            return domain(format!("k = {k} is divisible by p = {p}; the character would not be primitive"));
        }
        Ok(Self::build(p, m, k % p.pow(m)))
    }

    pub fn trivial(p: u64) -> Self {
        Self::build(p, 0, 0)
    }

    fn build(p: u64, m: u32, k: u64) -> Self {
        let modulus = p.pow(m + 1);
        let pm = p.pow(m);
        let mut table = vec![None; modulus as usize];
        let mut g: u64 = 1;
        for j in 0..pm {
            for t in 1..p {
                let w = teichmuller_mod(t, p, modulus);
                let a = (w as u128 * g as u128 % modulus as u128) as usize;
                table[a] = Some(k * j % pm);
            }
            g = (g as u128 * (1 + p) as u128 % modulus as u128) as u64;
        }
        PadicCharacter { p, m, k, table }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `m` with conductor `p^(m+1)`.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn conductor(&self) -> u64 {
        self.p.pow(self.m + 1)
    }

    pub fn order(&self) -> u64 {
        if self.m == 0 {
            1
        } else {
            self.p.pow(self.m)
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.m == 0
    }

    pub fn exponent(&self) -> u64 {
        self.k
    }

    /// Exponent `e` with `chi(a) = zeta_{p^m}^e`, or `None` when `p | a`.
    pub fn index(&self, a: i64) -> Option<u64> {
        let modulus = self.conductor() as i64;
        self.table[a.rem_euclid(modulus) as usize]
    }

    /// `chi(a)` in the level `level` field (`level >= m - 1`); zero when `p | a`.
    pub fn value(&self, a: i64, level: u32) -> CyclotomicElement {
        match self.index(a) {
            None => CyclotomicElement::zero(self.p, level),
            Some(e) => {
                assert!(level + 1 >= self.m, "level {level} too small for conductor p^{}", self.m + 1);
                let scale = self.p.pow(level + 1 - self.m) as i64;
                CyclotomicElement::zeta_pow(self.p, level, e as i64 * scale)
            }
        }
    }

    /// Complex value under `zeta_{p^m} -> exp(2 pi i / p^m)`.
    pub fn complex_value(&self, a: i64) -> Complex64 {
        match self.index(a) {
            None => Complex64::new(0.0, 0.0),
            Some(e) => {
                let t = 2.0 * std::f64::consts::PI * e as f64 / self.order() as f64;
                Complex64::new(t.cos(), t.sin())
            }
        }
    }

    /// The Galois conjugate `sigma_b o chi = chi^b`.
    pub fn power(&self, b: i64) -> Result<Self> {
        if self.m == 0 {
            return Ok(self.clone());
        }
        let pm = self.p.pow(self.m) as i64;
        let k = (self.k as i64 * b).rem_euclid(pm) as u64;
        Self::new(self.p, self.m, k)
    }

    pub fn conjugate(&self) -> Self {
        self.power(-1).expect("conjugate of a primitive character is primitive")
    }
}

/// `tau(chi) = sum_{a mod p^(m+1), p ∤ a} chi(a) zeta_{p^(m+1)}^a` at level `m`.
pub fn gauss_sum(chi: &PadicCharacter) -> Result<CyclotomicElement> {
    if chi.is_trivial() {
        return domain("gauss sum of the trivial character");
    }
    let p = chi.prime();
    let modulus = chi.conductor() as i64;
    let mut full = vec![crate::padic::Padic::exact_zero(p); modulus as usize];
    let one = crate::padic::Padic::one(p);
    for a in 1..modulus {
        if let Some(e) = chi.index(a) {
            // chi(a) = zeta_{p^(m+1)}^(p e)
            let t = ((p as i64 * e as i64 + a) % modulus) as usize;
            full[t] = &full[t] + &one;
        }
    }
    Ok(CyclotomicElement::reduce(p, chi.m(), full))
}
