use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::coleman::{MAX_DEGREE, MAX_PREC};
use crate::error::{Error, Result};
use crate::mtt::SymbolConfig;

/// Largest Riemann-sum level accepted; the work grows like `p^nu`.
pub const NU_MAX: u32 = 4;

/// Settings for a verification run, read from TOML with flag overrides on top.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// p-adic digits carried by the Riemann sums and Tate periods.
    pub precision: i64,
    /// Riemann-sum level for the numeric L-function checks.
    pub nu_max: u32,
    /// Digits demanded of the complex modular-symbol evaluation.
    pub complex_digits: u32,
    /// Primes for the Coleman series checks.
    pub coleman_primes: Vec<u64>,
    /// Target digits for the Coleman checks.
    pub coleman_digits: i64,
    /// Cap on the degree of the truncated Coleman series.
    pub series_degree_cap: usize,
    /// Truncation order of the jets.
    pub jet_order: usize,
    /// Thresholds for the numeric L-function checks.
    pub gs_digits: i64,
    pub interp_digits: i64,
    pub dataset: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: 12,
            nu_max: 3,
            complex_digits: 9,
            coleman_primes: vec![5],
            coleman_digits: 8,
            series_degree_cap: 2000,
            jet_order: 3,
            gs_digits: 2,
            interp_digits: 3,
            dataset: None,
            report: None,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let c: RunConfig = toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        RunConfig::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Validation(m));
        if self.precision <= 0 || self.precision > MAX_PREC {
            return bad(format!("precision {} outside 1..={MAX_PREC}", self.precision));
        }
        if self.nu_max == 0 || self.nu_max > NU_MAX {
            return bad(format!("nu_max {} outside 1..={NU_MAX}", self.nu_max));
        }
        if self.complex_digits == 0 || self.complex_digits > 14 {
            return bad(format!("complex_digits {} outside 1..=14 (f64 evaluation)", self.complex_digits));
        }
        if self.coleman_digits <= 0 || self.series_degree_cap < 2 || self.series_degree_cap > MAX_DEGREE {
            return bad("Coleman digits and degree cap must be positive, degree cap at most 5000".into());
        }
        if let Some(p) = self.coleman_primes.iter().find(|&&p| p < 3) {
            return bad(format!("Coleman prime {p} must be odd"));
        }
        if self.jet_order < 2 {
            return bad("jet order must be at least 2".into());
        }
        if self.gs_digits <= 0 || self.interp_digits <= 0 {
            return bad("digit thresholds must be positive".into());
        }
        Ok(())
    }

    pub fn symbol_config(&self) -> SymbolConfig {
        SymbolConfig { tolerance: 10f64.powi(-(self.complex_digits as i32)), ..SymbolConfig::default() }
    }
}
