use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Number of q-terms of `q j(q)` kept: `q j(q) = 1 + 744 q + 196884 q^2 + ...`.
pub const J_TERMS: usize = 41;

fn sigma3(n: usize) -> BigInt {
    let mut s = BigInt::zero();
    for d in 1..=n {
        if n % d == 0 {
            s += BigInt::from(d).pow(3);
        }
    }
    s
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `q j(q) = E4(q)^3 / prod (1 - q^n)^24`, indices `0..J_TERMS`.
pub fn q_times_j() -> &'static [BigInt] {
    static CELL: OnceLock<Vec<BigInt>> = OnceLock::new();
    CELL.get_or_init(|| {
        let len = J_TERMS;
        let mut e4 = vec![BigInt::zero(); len];
        e4[0] = BigInt::one();
        for (n, c) in e4.iter_mut().enumerate().skip(1) {
            *c = 240 * sigma3(n);
        }
        let e4_3 = mul_trunc(&mul_trunc(&e4, &e4, len), &e4, len);
        // 1 / prod (1 - q^n)^24 = prod (1 + q^n + q^2n + ...)^24
        let mut inv_eta = vec![BigInt::zero(); len];
        inv_eta[0] = BigInt::one();
        for n in 1..len {
            let geo: Vec<BigInt> = (0..len).map(|i| if i % n == 0 { BigInt::one() } else { BigInt::zero() }).collect();
            for _ in 0..24 {
                inv_eta = mul_trunc(&inv_eta, &geo, len);
            }
        }
        mul_trunc(&e4_3, &inv_eta, len)
    })
}
