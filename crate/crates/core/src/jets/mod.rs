//! Truncated two-variable Taylor algebra at `(k, s) = (2, 1)` and the
//! height-weight pairing, taken as a table of free values subject to its
//! axioms.

mod derive;
mod formulas;
mod jet;
mod pairing;
mod scalar;

pub use derive::{derive, evaluate_jet, Derivation, Identity, Step};
pub use formulas::{
    euler_factor_jet, fe_prefactor_jet, fe_residual, improved_factor, log_q, mellin_jet, rubin_jet, rubin_jet_from_tate,
    rubin_jet_squared, rubin_prefactor, rubin_prefactor_symbolic, s_jet,
};
pub use jet::{exp_minus_one, Jet2, DEFAULT_ORDER};
pub use pairing::{
    central_pairing, extended_height, functional_equation_constraint, hw_pairing, s_minus_half_k, Class, FeRelation,
    FeReport, PairingTable,
};
pub use scalar::{Scalar, Sym};
