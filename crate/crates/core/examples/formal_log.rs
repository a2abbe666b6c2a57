//! The p-adic logarithm of a rational point through the formal group, on the
//! rank-one curve 91b1 at p = 7.

use excezero::tate::{formal_log, CurveData, Point};

fn main() -> excezero::Result<()> {
    let e = CurveData::from_ints("91b1", [0, 1, 1, -7, 5])?;
    let pt = Point::from_ints(-1, 3);
    let l1 = formal_log(&e, 7, &pt, 15)?;
    println!("log_A(P)  = {l1}");
    let l3 = formal_log(&e, 7, &e.mul_point(3, &pt), 15)?;
    println!("log_A(3P) = {l3}");
    println!("3 log_A(P) agrees to {} digits", l3.agreement(&l1.mul_int(3)));
    Ok(())
}
