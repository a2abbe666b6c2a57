use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use super::curve::CurveData;
use crate::padic::val_int;

/// Largest prime accepted by the naive point count.
pub const MAX_COUNT_PRIME: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

/// Outcome of [`check_split_multiplicative`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    pub split: bool,
    pub reduction: Reduction,
    pub diagnostic: String,
}

/// `#E(F_l)` counting every point of the (possibly singular) reduction,
/// including the point at infinity.
fn count_points(e: &CurveData, l: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = e.a_mod(l);
    if l == 2 {
        let mut n = 1;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = (y * y + a1 * x * y + a3 * y) % 2;
                let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
                if lhs == rhs {
                    n += 1;
                }
            }
        }
        return n;
    }
    // complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    let b2 = (a1 * a1 + 4 * a2) % l;
    let b4 = (2 * a4 + a1 * a3) % l;
    let b6 = (a3 * a3 + 4 * a6) % l;
    let mut is_sq = vec![false; l as usize];
    for y in 1..l {
        is_sq[(y * y % l) as usize] = true;
    }
    let mut n = 1;
    for x in 0..l {
        let r = ((4 * x % l * x % l * x) % l + b2 * x % l * x % l + 2 * b4 % l * x % l + b6) % l;
        n += if r == 0 {
            1
        } else if is_sq[r as usize] {
            2
        } else {
            0
        };
    }
    n
}

/// `a_l = l + 1 - #E(F_l)`; at bad primes this gives `+1`, `-1` or `0` for
/// split, non-split and additive reduction.
pub fn trace_by_counting(e: &CurveData, l: u64) -> i64 {
    assert!(l <= MAX_COUNT_PRIME, "point counting capped at l <= {MAX_COUNT_PRIME}, got {l}");
    l as i64 + 1 - count_points(e, l) as i64
}

/// Frobenius trace / Hecke eigenvalue at a prime.
pub fn a_ell(e: &CurveData, l: u64) -> i64 {
    e.a_ell(l)
}

pub fn reduction_type(e: &CurveData, p: u64) -> Reduction {
    let pb = BigInt::from(p);
    if !(e.discriminant() % &pb).is_zero() {
        return Reduction::Good;
    }
    if (&e.invariants().c4 % &pb).is_zero() {
        return Reduction::Additive;
    }
    match e.a_ell(p) {
        1 => Reduction::SplitMultiplicative,
        -1 => Reduction::NonsplitMultiplicative,
        a => unreachable!("a_p = {a} at a multiplicative prime"),
    }
}

fn legendre(a: &BigInt, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    if r.modpow(&e, &pb) == BigInt::from(1) {
        1
    } else {
        -1
    }
}

/// Whether `E` has split multiplicative reduction at `p`, with a reason.
///
/// Requires `ord_p(j) < 0`, `p` not dividing `c4`, and `a_p = +1`; the last
/// condition is cross-checked against the tangent-slope criterion (`-c6` is a
/// square mod `p`).
pub fn check_split_multiplicative(e: &CurveData, p: u64) -> SplitCheck {
    let inv = e.invariants();
    let vd = val_int(&inv.disc, p);
    if vd == 0 {
        return SplitCheck { split: false, reduction: Reduction::Good, diagnostic: format!("good reduction at {p}") };
    }
    if val_int(&inv.c4, p) > 0 {
        return SplitCheck {
            split: false,
            reduction: Reduction::Additive,
            diagnostic: format!("not multiplicative: additive reduction at {p} (p divides c4 and Delta)"),
        };
    }
    let j = e.j_invariant();
    let vj = val_int(j.numer(), p) - val_int(j.denom(), p);
    let ap = e.a_ell(p);
    let slope = legendre(&(-&inv.c6), p);
    if (ap == 1) != (slope == 1) {
        return SplitCheck {
            split: false,
            reduction: Reduction::NonsplitMultiplicative,
            diagnostic: format!("inconsistent split data at {p}: a_p = {ap}, (-c6 | p) = {slope}"),
        };
    }
    if ap == 1 {
        SplitCheck {
            split: true,
            reduction: Reduction::SplitMultiplicative,
            diagnostic: format!("split multiplicative at {p}: ord_p(j) = {vj}, a_p = +1"),
        }
    } else {
        SplitCheck {
            split: false,
            reduction: Reduction::NonsplitMultiplicative,
            diagnostic: format!("non-split multiplicative at {p}: a_p = {ap}"),
        }
    }
}

/// Primes up to `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Coefficients `a_0 = 0, a_1, ..., a_nmax` of the attached newform.
///
/// Prime traces are counted in parallel and memoised on the curve; prime
/// powers follow the Hecke recursion and composite indices multiplicativity.
pub fn an_table(e: &CurveData, nmax: usize) -> Vec<i64> {
    let primes = primes_up_to(nmax as u64);
    let missing: Vec<u64> = primes.iter().copied().filter(|&l| e.cached(l).is_none()).collect();
    let counted: Vec<(u64, i64)> = missing.par_iter().map(|&l| (l, trace_by_counting(e, l))).collect();
    e.cache_many(&counted);
    let bad: Vec<u64> = e.bad_primes();
    let mut spf = vec![0u32; nmax + 1];
    for &l in &primes {
        let mut j = l as usize;
        while j <= nmax {
            if spf[j] == 0 {
                spf[j] = l as u32;
            }
            j += l as usize;
        }
    }
    let mut a = vec![0i64; nmax + 1];
    if nmax >= 1 {
        a[1] = 1;
    }
    for n in 2..=nmax {
        let l = spf[n] as u64;
        let mut m = n;
        let mut k = 0;
        while m % l as usize == 0 {
            m /= l as usize;
            k += 1;
        }
        let al = e.a_ell(l);
        let alk = if bad.contains(&l) {
            al.pow(k)
        } else {
            let (mut x0, mut x1) = (1i64, al);
            for _ in 1..k {
                let x2 = al * x1 - l as i64 * x0;
                x0 = x1;
                x1 = x2;
            }
            x1
        };
        a[n] = alk * a[m];
    }
    a
}

/// Root number of a semistable curve from the local signs `-a_l` at bad primes.
pub fn semistable_root_number(e: &CurveData) -> i64 {
    let mut w = -1;
    for l in e.bad_primes() {
        w *= -e.a_ell(l);
    }
    w
}

