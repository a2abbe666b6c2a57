//! p-adic numbers with tracked precision, the Iwasawa logarithm and a Gauss
//! sum in the cyclotomic tower.

use excezero::padic::{gauss_sum, padic_exp, padic_log, parse_padic, teichmuller, Padic, PadicCharacter};
use num_bigint::BigInt;

fn main() -> excezero::Result<()> {
    let p = 5;
    let x = parse_padic("3/7", Some(p))?.with_prec(10);
    let y = Padic::from_int(p, 26, 10);
    println!("x       = {x}");
    println!("x * y   = {}", &x * &y);
    println!("x / 5   = {}", x.try_div(&Padic::exact_int(p, 5))?);

    let l = padic_log(&y)?;
    println!("log 26  = {l}");
    println!("exp log = {}", padic_exp(&l)?);

    let w = teichmuller(&BigInt::from(2), p, 10)?;
    println!("omega(2) = {w}, omega(2)^4 = {}", w.pow(4));

    let chi = PadicCharacter::new(p, 1, 1)?;
    let g = gauss_sum(&chi)?;
    println!("tau(chi) in Q_5(mu_25):\n{g}");
    Ok(())
}
