use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::periods::omega_plus;
use super::reconstruct::reconstruct;
use crate::error::{domain, Error, Result};
use crate::padic::inv_mod;
use crate::tate::{an_table, CurveData};

/// Knobs for symbol evaluation.
#[derive(Clone, Copy, Debug)]
pub struct SymbolConfig {
    /// Largest denominator accepted by rational reconstruction.
    pub max_denominator: u64,
    /// Reconstruction acceptance threshold.
    pub tolerance: f64,
    /// Tail cutoff: terms with `exp(-2 pi n h) < exp(-cutoff)` are dropped.
    pub cutoff: f64,
}

impl Default for SymbolConfig {
    fn default() -> Self {
        SymbolConfig { max_denominator: 10_000, tolerance: 1e-9, cutoff: 42.0 }
    }
}

/// Plus modular symbols `[a/m]^+` of the newform attached to a semistable
/// curve, normalised by `Omega^+` so that `[0]^+ = L(E,1)/Omega^+`.
///
/// Evaluation uses the Atkin-Lehner involution `W_Q`, `Q = M/gcd(m, M)`,
/// which maps `i infinity` to `a/m`. Splitting the path at the fixed height
/// `1/(m sqrt Q)` gives
///
/// ```text
/// Omega^+ [a/m]^+ = sum_n a_n/n exp(-2 pi n/(m sqrt Q))
///                   (cos(2 pi n a/m) - eps_Q cos(2 pi n b/m)),  b = (Q a)^-1 mod m
/// ```
///
/// with `eps_Q = prod_{l | Q} (-a_l)` the Atkin-Lehner eigenvalue. All angles
/// are exact rationals, so the only rounding is in the summation.
#[derive(Clone, Debug)]
pub struct ModularSymbolTable {
    curve: CurveData,
    level: u64,
    omega: f64,
    an: Arc<Vec<i64>>,
    config: SymbolConfig,
    entries: BTreeMap<u64, Vec<BigRational>>,
    worst_residual: f64,
    denominator_lcm: u64,
}

struct Evaluator<'a> {
    curve: &'a CurveData,
    level: u64,
    omega: f64,
    an: &'a [i64],
    config: SymbolConfig,
}

impl Evaluator<'_> {
    fn terms(&self, m: u64) -> usize {
        let q = (self.level / self.level.gcd(&m)) as f64;
        let h = 1.0 / (m as f64 * q.sqrt());
        (self.config.cutoff / (2.0 * PI * h)).ceil() as usize + 1
    }

    fn eps(&self, q: u64) -> f64 {
        self.curve.bad_primes().into_iter().filter(|l| q % l == 0).map(|l| -self.curve.a_ell(l) as f64).product()
    }

    /// All `[a/m]^+` for `a mod m` with `gcd(a, m) = 1`; other slots are
    /// filled through `a/m = (a/g)/(m/g)`.
    fn row(&self, m: u64, lower: &BTreeMap<u64, Vec<BigRational>>) -> Result<(Vec<BigRational>, f64)> {
        let q = self.level / self.level.gcd(&m);
        let h = 1.0 / (m as f64 * (q as f64).sqrt());
        let nt = self.terms(m);
        if nt >= self.an.len() {
            return Err(Error::Precision(format!("modulus {m} needs {nt} coefficients, table has {}", self.an.len())));
        }
        let eps = self.eps(q);
        let weights: Vec<f64> =
            (1..nt).map(|n| self.an[n] as f64 / n as f64 * (-2.0 * PI * h * n as f64).exp()).collect();
        let cos: Vec<f64> = (0..m).map(|k| (2.0 * PI * k as f64 / m as f64).cos()).collect();
        let sum = |t: u64| -> f64 {
            let mut s = 0.0;
            let mut idx = t % m;
            for w in &weights {
                s += w * cos[idx as usize];
                idx += t;
                if idx >= m {
                    idx -= m;
                }
            }
            s
        };
        let half = m / 2 + 1;
        let solved: Vec<Option<(BigRational, f64)>> = (0..half)
            .into_par_iter()
            .map(|a| {
                if a.gcd(&m) != 1 && m > 1 {
                    return Ok(None);
                }
                let b = if m == 1 {
                    0
                } else {
                    inv_mod(&((q % m) * a % m).into(), &m.into()).try_into().expect("residue fits u64")
                };
                let v = (sum(a) - eps * sum(b)) / self.omega;
                let r = reconstruct(v, self.config.max_denominator, self.config.tolerance).map_err(|e| match e {
                    Error::Precision(msg) => Error::Precision(format!("[{a}/{m}]^+: {msg}")),
                    other => other,
                })?;
                let resid = (v - r.to_f64().unwrap_or(f64::NAN)).abs();
                Ok(Some((r, resid)))
            })
            .collect::<Result<_>>()?;
        let mut row = vec![BigRational::zero(); m as usize];
        let mut worst: f64 = 0.0;
        for a in 0..m {
            let r = a.min(m - a) as usize;
            let r = if m == 1 { 0 } else { r };
            match &solved[r] {
                Some((v, e)) => {
                    row[a as usize] = v.clone();
                    worst = worst.max(*e);
                }
                None => {
                    let g = a.gcd(&m);
                    let (a2, m2) = (a / g, m / g);
                    let sub = lower.get(&m2).ok_or_else(|| Error::Lookup(format!("row for modulus {m2} missing")))?;
                    row[a as usize] = sub[a2 as usize].clone();
                }
            }
        }
        Ok((row, worst))
    }
}

fn divisors(m: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=m).filter(|k| m % k == 0).collect();
    d.sort_unstable();
    d
}

impl ModularSymbolTable {
    /// Build the table for every modulus dividing one of `moduli`.
    pub fn build(curve: &CurveData, moduli: &[u64], config: SymbolConfig) -> Result<Self> {
        let level = curve.conductor()?;
        let omega = omega_plus(curve);
        let mut all: Vec<u64> = moduli.iter().flat_map(|&m| divisors(m)).collect();
        all.sort_unstable();
        all.dedup();
        if all.is_empty() {
            all.push(1);
        }
        let probe = Evaluator { curve, level, omega, an: &[], config };
        let need = all.iter().map(|&m| probe.terms(m)).max().unwrap_or(1) + 1;
        let an = Arc::new(an_table(curve, need));
        let mut table = ModularSymbolTable {
            curve: curve.clone(),
            level,
            omega,
            an,
            config,
            entries: BTreeMap::new(),
            worst_residual: 0.0,
            denominator_lcm: 1,
        };
        for m in all {
            table.insert_row(m)?;
        }
        Ok(table)
    }

    /// Table with the moduli `p^0, ..., p^nu`.
    pub fn for_prime_power(curve: &CurveData, p: u64, nu: u32, config: SymbolConfig) -> Result<Self> {
        Self::build(curve, &[p.pow(nu)], config)
    }

    fn insert_row(&mut self, m: u64) -> Result<()> {
        if self.entries.contains_key(&m) {
            return Ok(());
        }
        let ev = Evaluator { curve: &self.curve, level: self.level, omega: self.omega, an: &self.an, config: self.config };
        let (row, worst) = ev.row(m, &self.entries)?;
        for r in &row {
            let d: u64 = r.denom().try_into().map_err(|_| Error::Validation("huge denominator".into()))?;
            self.denominator_lcm = self.denominator_lcm.lcm(&d);
        }
        self.worst_residual = self.worst_residual.max(worst);
        self.entries.insert(m, row);
        Ok(())
    }

    pub fn curve(&self) -> &CurveData {
        &self.curve
    }

    /// Conductor `M` of the curve.
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn omega_plus(&self) -> f64 {
        self.omega
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.entries.keys().copied().collect()
    }

    /// Largest `|value - reconstruction|` seen while building.
    pub fn worst_residual(&self) -> f64 {
        self.worst_residual
    }

    /// Least common multiple of all stored denominators.
    pub fn denominator_lcm(&self) -> u64 {
        self.denominator_lcm
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.an
    }

    /// `[a/m]^+` for a stored modulus.
    pub fn symbol(&self, a: i64, m: u64) -> Result<BigRational> {
        if m == 0 {
            return domain("modulus 0");
        }
        let row = self
            .entries
            .get(&m)
            .ok_or_else(|| Error::Lookup(format!("modulus {m} not in the symbol table (have {:?})", self.moduli())))?;
        Ok(row[a.rem_euclid(m as i64) as usize].clone())
    }

    /// `[r]^+` for a rational `r` whose reduced denominator is stored.
    pub fn symbol_at(&self, r: &BigRational) -> Result<BigRational> {
        let m: u64 = r.denom().try_into().map_err(|_| Error::Lookup("denominator too large".into()))?;
        let a: i64 = (r.numer() % r.denom()).try_into().expect("reduced numerator fits i64");
        self.symbol(a, m)
    }
}

/// `[r]^+` computed from scratch.
pub fn modular_symbol(curve: &CurveData, r: &BigRational) -> Result<BigRational> {
    let m: u64 = r.denom().try_into().map_err(|_| Error::Lookup("denominator too large".into()))?;
    let t = ModularSymbolTable::build(curve, &[m], SymbolConfig::default())?;
    t.symbol_at(r)
}

/// `sum_j [(a + j m)/(p m)]^+ - a_p [a/m]^+`; zero for every `a` when the
/// symbols are right (the `U_p` relation).
pub fn hecke_residual(t: &ModularSymbolTable, p: u64, a: i64, m: u64) -> Result<BigRational> {
    let mut s = BigRational::zero();
    for j in 0..p as i64 {
        s += t.symbol(a + j * m as i64, p * m)?;
    }
    let ap = BigRational::from_integer(t.curve().a_ell(p).into());
    Ok(s - ap * t.symbol(a, m)?)
}
