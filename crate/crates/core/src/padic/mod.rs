//! p-adic numbers, the cyclotomic tower and characters of p-power order.

mod character;
mod cyclotomic;
mod functions;
mod number;
mod text;

pub use character::{gauss_sum, PadicCharacter};
pub use cyclotomic::{degree, teichmuller_mod, CyclotomicElement};
pub use functions::{
    binomial, log_one_plus_p, one_unit, one_unit_int, padic_exp, padic_exp_prec, padic_log, padic_log_prec,
    teichmuller, teichmuller_of, DEFAULT_PREC,
};
pub use number::{inv_mod, ppow, split_p, val_int, val_rat, Padic, Verdict, EXACT};
pub use text::parse_padic;
