use serde::{Deserialize, Serialize};

use super::thresholds::{ThresholdRule, ThresholdSchedule};
use super::CertifyError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "level")]
pub enum Mode {
    #[default]
    Adaptive,
    Flat,
    /// Every component tested at one level.
    Fixed(usize),
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Adaptive => "adaptive",
            Mode::Flat => "flat",
            Mode::Fixed(_) => "fixed",
        }
    }
}

/// Where non-adaptive modes take the class to test.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopClassSource {
    /// Most frequent vertex among the test samples.
    #[default]
    Counts,
    /// Top class of the level-selection samples, shared with adaptive mode.
    #[serde(alias = "n0")]
    Selection,
}

impl std::str::FromStr for TopClassSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "counts" => Ok(Self::Counts),
            "n0" | "selection" => Ok(Self::Selection),
            other => Err(format!(
                "unknown top-class source `{other}` (expected counts|n0)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationConfig {
    pub sigma: f64,
    pub tau: f64,
    pub alpha: f64,
    pub n: usize,
    pub n0: usize,
    pub thresholds: ThresholdSchedule,
    pub threshold_rule: ThresholdRule,
    pub mode: Mode,
    pub flat_topclass: TopClassSource,
}

impl Default for CertificationConfig {
    fn default() -> Self {
        Self {
            sigma: 0.25,
            tau: 0.75,
            alpha: 0.001,
            n: 100,
            n0: 10,
            thresholds: ThresholdSchedule::default(),
            threshold_rule: ThresholdRule::Finest,
            mode: Mode::Adaptive,
            flat_topclass: TopClassSource::Counts,
        }
    }
}

impl CertificationConfig {
    pub fn with_mode(&self, mode: Mode) -> Self {
        Self {
            mode,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), CertifyError> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(CertifyError::Domain(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        if !(self.tau > 0.5 && self.tau < 1.0) {
            return Err(CertifyError::Domain(format!(
                "tau must lie in (0.5, 1), got {}",
                self.tau
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CertifyError::Domain(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.n == 0 || self.n0 == 0 {
            return Err(CertifyError::Config("n and n0 must be at least 1".into()));
        }
        if self.thresholds.values.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(CertifyError::NonDescendingThresholds(
                self.thresholds.values.clone(),
            ));
        }
        Ok(())
    }
}
