use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Continued-fraction reconstruction of a rational with denominator at most
/// `max_den`, accepted only when `|x - p/q| < tol`.
///
/// With `tol < 1/(2 max_den^2)` at most one fraction can qualify, so the
/// answer is unambiguous; otherwise an error asks for more precision.
pub fn reconstruct(x: f64, max_den: u64, tol: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::Precision(format!("non-finite value {x}")));
    }
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() < tol {
            return Ok(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    Err(Error::Precision(format!(
        "no rational with denominator <= {max_den} within {tol:e} of {x}; raise the truncation bound"
    )))
}
