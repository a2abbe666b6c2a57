//! Coleman's norm operator and the interpolating power series of the
//! cyclotomic elements `x_n`, with the base-level model of the derivative of
//! the Coleman map on `Hom(Q_p^*, Q_p)`.

mod hom;
mod interp;
mod norm;
mod series;

pub use hom::{coleman_derivative_model, derivative_model_agreement, dual_exp_base, LocalHomClass};
pub use interp::{
    construct_g, degree_for, iterate_log_g, l_sigma, log_g_series, ord_c_prime, teichmuller_transform, uniqueness_probe,
    x_values, NormCompatibleUnits, Provenance, UniquenessProbe, MAX_DEGREE, MAX_PREC,
};
pub use norm::coleman_norm_operator;
pub use series::PowerSeriesZp;
