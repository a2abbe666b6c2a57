//! Curve data, reduction types, Tate periods and the formal-group logarithm.

mod curve;
mod dataset;
mod formal;
mod jseries;
mod period;
mod reduction;

pub use curve::{factor, CurveData, Invariants, Point};
pub use dataset::{parse_records, CurveRecord, BUILTIN};
pub use formal::{differential_coefficients, formal_log, formal_log_series};
pub use jseries::{q_times_j, J_TERMS};
pub use period::{branch_log, j_of_q, tate_parameter, tate_period, TateCurveData};
pub use reduction::{
    a_ell, an_table, check_split_multiplicative, primes_up_to, reduction_type, semistable_root_number,
    trace_by_counting, Reduction, SplitCheck, MAX_COUNT_PRIME,
};
