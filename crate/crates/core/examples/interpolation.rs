//! Measure side against complex side for a character of order 5 on 15a1.

use excezero::mtt::{interpolation_check, ModularSymbolTable, SymbolConfig};
use excezero::padic::PadicCharacter;
use excezero::suite::{builtin_dataset, select};

fn main() -> excezero::Result<()> {
    let r = select(&builtin_dataset()?, Some("15a1"), Some(5))?.remove(0);
    let t = ModularSymbolTable::build(&r.curve, &[25], SymbolConfig::default())?;
    let chi = PadicCharacter::new(5, 1, 1)?;
    let rep = interpolation_check(&t, &chi, 10)?;
    println!("measure side:\n{}", rep.measure_side);
    println!("complex side:\n{}", rep.complex_side);
    println!("root number {:.6}, agreement {} digits", rep.root_number, rep.digits);
    Ok(())
}
