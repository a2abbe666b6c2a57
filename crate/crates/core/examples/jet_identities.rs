//! The height-weight pairing as a symbolic table: the extended height as a
//! Gram determinant and its restrictions, then every derivation.

use excezero::jets::{derive, extended_height, functional_equation_constraint, Identity, PairingTable, Sym};

fn main() -> excezero::Result<()> {
    let table = PairingTable::symbolic(&["x"]);
    let h = extended_height("x", &table)?;
    println!("h(x)        = {h}");
    println!("h(x)(k,k/2) = {}", h.at_central_line());
    println!("h(x)(2,s)   = {}", h.at_weight_two());
    println!("h(x)(k,1)   = {}", h.at_s_one());
    for r in functional_equation_constraint(&table)?.relations {
        println!("relation on <{},{}>: {} = 0", r.x, r.y, r.on_k);
    }
    let numeric = PairingTable::new(Sym::int(3)).with_class("x", Sym::int(1)).with_pair("x", "x", Sym::int(2), Sym::int(-1));
    println!("c = 2, w = -1 consistent: {}", functional_equation_constraint(&numeric)?.is_consistent());
    println!();
    for id in Identity::ALL {
        println!("{}\n", derive(id)?);
    }
    Ok(())
}
