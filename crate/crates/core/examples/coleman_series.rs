//! The Coleman series g interpolating log-derivatives of cyclotomic units,
//! its defining properties and ord(c').

use excezero::coleman::{
    coleman_norm_operator, construct_g, degree_for, l_sigma, ord_c_prime, x_values, NormCompatibleUnits,
};

fn main() -> excezero::Result<()> {
    let p = 5;
    let digits = 8;
    let d = degree_for(p, 1, digits + 3);
    let g = construct_g(p, d, digits + 4)?;
    println!("g mod X^6:\n{}", g.truncate(6));

    let units = NormCompatibleUnits::from_series(&g, 1)?;
    let xs = x_values(p, 1)?;
    for n in 0..2u32 {
        let lc = units.unit(n)?.log()?;
        println!("log g(zeta_{{5^{}}} - 1) = x_{n} to {} digits", n + 1, lc.agreement(&xs[n as usize]));
    }
    println!("norm compatibility: {:?} digits", units.norm_agreement()?);

    let small = construct_g(3, 90, 40)?;
    let ng = coleman_norm_operator(&small, 6)?;
    println!("N(g) = g at p = 3 to {} digits", (0..6).map(|j| ng.coeff(j).agreement(small.coeff(j))).min().unwrap());

    let o = ord_c_prime(&g)?;
    println!("ord(c') = {o}");
    println!("ord(c') l_sigma = {}", &o * &l_sigma(p, digits + 6));
    Ok(())
}
