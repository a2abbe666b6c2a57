//! Modular symbols, the p-adic measure they define, Riemann-sum evaluation
//! of the p-adic L-function and the numeric checks built on it.

mod checks;
mod measure;
mod periods;
mod reconstruct;
mod symbols;

pub use checks::{
    character_integral, functional_equation_check, gs_check, interpolation_check, twisted_l_value,
    FunctionalEquationReport, GsReport, InterpolationReport,
};
pub use measure::{measure, LpValue, PadicLFunction};
pub use periods::{l_ratio, l_value_at_1, omega_plus, real_components, real_period};
pub use reconstruct::reconstruct;
pub use symbols::{hecke_residual, modular_symbol, ModularSymbolTable, SymbolConfig};
