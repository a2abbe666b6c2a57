//! p-adic arithmetic of elliptic curves with split multiplicative reduction.
//!
//! The crate is organised bottom-up:
//!
//! - [`padic`]: p-adic numbers with tracked precision, the cyclotomic tower
//!   `Q_p(mu_{p^{n+1}})`, characters of p-power order and Gauss sums.
//! - [`tate`]: curve data, point counting, Tate periods, L-invariants and the
//!   formal-group logarithm.
//! - [`mtt`]: modular symbols, the associated p-adic measure and the
//!   Riemann-sum evaluation of the p-adic L-function.
//! - [`coleman`]: Coleman's norm operator and interpolating power series.
//! - [`jets`]: truncated two-variable Taylor algebra and the height-weight
//!   pairing table.
//! - [`suite`]: dataset ingestion, run configuration and verification reports.

pub mod coleman;
pub mod error;
pub mod jets;
pub mod mtt;
pub mod padic;
pub mod suite;
pub mod tate;

pub use error::{Error, Result};
pub use padic::{CyclotomicElement, Padic, PadicCharacter, Verdict};
