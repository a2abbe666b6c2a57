//! The Mellin transform at (k, s) = (2, 1) of an Iwasawa-algebra polynomial,
//! and the jet of L_p(A, s) of 15a1 from its Taylor coefficients.

use std::sync::Arc;

use excezero::jets::{fe_residual, mellin_jet, s_jet, Jet2, Sym};
use excezero::mtt::{ModularSymbolTable, PadicLFunction, SymbolConfig};
use excezero::padic::{padic_log_prec, Padic};
use excezero::suite::{builtin_dataset, select};

fn main() -> excezero::Result<()> {
    let z = Sym::zero();
    let varpi = Jet2::k(&z, 3);
    let varsigma = Jet2::s(&z, 3);
    let l = Sym::var("l");
    println!("varpi          -> {}", mellin_jet(&varpi, &l, &l)?);
    println!("varpi*varsigma -> {}", mellin_jet(&varpi.mul(&varsigma), &l, &l)?);

    let r = select(&builtin_dataset()?, Some("15a1"), Some(5))?.remove(0);
    let t = ModularSymbolTable::for_prime_power(&r.curve, 5, 4, SymbolConfig::default())?;
    let lf = PadicLFunction::new(Arc::new(t), 5, 4, 12)?;
    let cs: Vec<Padic> = lf.taylor_coefficients(3).iter().map(|c| c.certified()).collect();
    let lp = s_jet(&Padic::exact_zero(5), &cs);
    println!("L_p(A, s) = {lp}");
    let log_n = padic_log_prec(&Padic::from_int(5, 3, 12), 12)?;
    println!("functional-equation residual = {}", fe_residual(&lp, &log_n, 1)?);
    Ok(())
}
