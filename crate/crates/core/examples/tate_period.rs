//! Tate period, L-invariant and the branch of log vanishing on q_A for every
//! curve in the shipped dataset.

use excezero::suite::builtin_dataset;
use excezero::tate::tate_period;

fn main() -> excezero::Result<()> {
    for r in builtin_dataset()? {
        let t = tate_period(&r.curve, r.p, 12)?;
        println!("{:<5} p = {:<2} ord q = {:<2} L_p = {}", r.label(), r.p, t.ord_q, t.l_invariant);
        // log_{q_A}(q_A) = 0 up to the precision of L_p
        println!("      log_q(q) = {}", t.branch_log(&t.q)?);
    }
    Ok(())
}
