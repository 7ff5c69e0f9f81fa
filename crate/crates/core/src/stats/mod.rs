//! Numeric kernels for the certification test: binomial tails, the normal
//! quantile, Bonferroni correction and the certified radius.

mod binomial;
mod normal;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use binomial::{binom_upper_tail, log_pmf as binom_log_pmf};
pub use normal::{inv_norm_cdf, norm_cdf};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("numeric domain error: {0}")]
    Domain(String),
}

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PValue(f64);

impl PValue {
    pub fn new(value: f64) -> Result<Self, StatsError> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(StatsError::Domain(format!(
                "p-value {value} outside [0, 1]"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Certified l2 radius in input space.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Radius(f64);

impl Radius {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// One-sided p-value of observing at least `k` hits in `n` trials when the
/// per-trial hit probability is at most `tau`.
pub fn binom_p_value(k: u64, n: u64, tau: f64) -> Result<PValue, StatsError> {
    binom_upper_tail(k, n, tau).map(PValue)
}

/// `sigma * Phi^-1(tau)`. Requires `sigma > 0` and `0.5 <= tau < 1`.
pub fn certified_radius(sigma: f64, tau: f64) -> Result<Radius, StatsError> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(StatsError::Domain(format!(
            "noise scale {sigma} must be positive"
        )));
    }
    if !(0.5..1.0).contains(&tau) {
        return Err(StatsError::Domain(format!(
            "threshold {tau} outside [0.5, 1)"
        )));
    }
    Ok(Radius(sigma * inv_norm_cdf(tau)?))
}

/// Bonferroni-corrected rejection flags: `p <= alpha / N`.
///
/// A rejected null hypothesis means the component is certified.
pub fn bonferroni_test(p_values: &[PValue], alpha: f64) -> Result<Vec<bool>, StatsError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::Domain(format!("alpha {alpha} outside (0, 1)")));
    }
    if p_values.is_empty() {
        return Ok(Vec::new());
    }
    let cutoff = alpha / p_values.len() as f64;
    Ok(p_values.iter().map(|p| p.0 <= cutoff).collect())
}
