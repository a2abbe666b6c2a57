//! Both forms of the derivative of the Coleman map on classes vanishing on
//! the Tate period, for 11a1 at p = 11.

use excezero::coleman::{coleman_derivative_model, LocalHomClass};
use excezero::padic::Padic;
use excezero::suite::{builtin_dataset, select};
use excezero::tate::tate_period;

fn main() -> excezero::Result<()> {
    let r = select(&builtin_dataset()?, Some("11a1"), Some(11))?.remove(0);
    let t = tate_period(&r.curve, 11, 20)?;
    let branch = LocalHomClass::branch_log(&t);
    for alpha in [1, 2, -5, 11] {
        let z = branch.scale(&Padic::exact_int(11, alpha));
        let (lhs, rhs) = coleman_derivative_model(&z, &t)?;
        println!("alpha = {alpha:>3}: {lhs}\n            {rhs}");
    }
    // log_p itself does not vanish on q_A
    match coleman_derivative_model(&LocalHomClass::log_p(11, 20), &t) {
        Err(e) => println!("log_p rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
