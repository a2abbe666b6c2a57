//! Riemann sums for the p-adic L-function of 11a1 at p = 11: the exceptional
//! zero at s = 1 and the derivative against L_p(A) L(A,1)/Omega+.

use std::sync::Arc;

use excezero::mtt::{gs_check, ModularSymbolTable, PadicLFunction, SymbolConfig};
use excezero::padic::Padic;
use excezero::suite::{builtin_dataset, select};

fn main() -> excezero::Result<()> {
    let r = select(&builtin_dataset()?, Some("11a1"), Some(11))?.remove(0);
    let table = Arc::new(ModularSymbolTable::for_prime_power(&r.curve, 11, 3, SymbolConfig::default())?);
    println!("[0/1]^+ = {}, [1/11]^+ = {}", table.symbol(0, 1)?, table.symbol(1, 11)?);
    let lf = PadicLFunction::new(table, 11, 3, 12)?;
    println!("L_p(1)  = {}", lf.lp_value(&Padic::one(11))?.value);
    println!("L_p(12) = {}", lf.lp_value(&Padic::exact_int(11, 12))?.certified());
    let gs = gs_check(&lf)?;
    println!("L_p'(1)             = {}", gs.derivative.certified());
    println!("L_p(A) L(A,1)/Omega = {}  (L(A,1)/Omega = {})", gs.predicted, gs.l_ratio);
    println!("agreement: {} digits", gs.digits);
    Ok(())
}
