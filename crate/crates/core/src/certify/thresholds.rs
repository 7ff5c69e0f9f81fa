//! Probability-gap thresholds that map a component to a hierarchy level.

use serde::{Deserialize, Serialize};

use super::CertifyError;

/// How the input tuple was ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Given fine-to-coarse (largest first).
    Descending,
    /// Given coarse-to-fine (smallest first), reversed on ingest.
    Reversed,
}

/// Which qualifying level is chosen when several thresholds lie below the gap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdRule {
    /// Finest level `l` with `t_l < gap`.
    #[default]
    Finest,
    /// Level whose threshold is smallest among those `< gap` (the coarsest).
    Argmin,
}

impl std::str::FromStr for ThresholdRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "finest" | "min-level" => Ok(Self::Finest),
            "argmin" => Ok(Self::Argmin),
            other => Err(format!(
                "unknown threshold rule `{other}` (expected finest|argmin)"
            )),
        }
    }
}

/// A strictly descending threshold tuple `t_0 > t_1 > ...` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSchedule {
    /// The tuple as supplied.
    pub input: Vec<f64>,
    pub orientation: Orientation,
    /// Strictly descending values after reorientation and dedupe.
    pub values: Vec<f64>,
    /// `level_remap[j]` is the level index of `values[j]` in the reoriented tuple.
    pub level_remap: Vec<usize>,
}

fn check_range(values: &[f64]) -> Result<(), CertifyError> {
    if values.is_empty() {
        return Err(CertifyError::Config("threshold tuple is empty".into()));
    }
    match values.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        Some(t) => Err(CertifyError::Config(format!(
            "threshold {t} outside [0, 1]"
        ))),
        None => Ok(()),
    }
}

impl ThresholdSchedule {
    /// Accepts only a strictly descending tuple.
    pub fn strict(values: &[f64]) -> Result<Self, CertifyError> {
        check_range(values)?;
        if values.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(CertifyError::NonDescendingThresholds(values.to_vec()));
        }
        Ok(Self {
            input: values.to_vec(),
            orientation: Orientation::Descending,
            values: values.to_vec(),
            level_remap: (0..values.len()).collect(),
        })
    }

    /// Accepts a monotone tuple in either direction, possibly with repeats.
    ///
    /// Non-increasing tuples are taken as given; non-decreasing ones are
    /// reversed. Repeated values keep the finest level that carries them.
    pub fn canonicalize(values: &[f64]) -> Result<Self, CertifyError> {
        check_range(values)?;
        let non_increasing = values.windows(2).all(|w| w[0] >= w[1]);
        let non_decreasing = values.windows(2).all(|w| w[0] <= w[1]);
        let (ordered, orientation) = if non_increasing {
            (values.to_vec(), Orientation::Descending)
        } else if non_decreasing {
            (
                values.iter().rev().copied().collect(),
                Orientation::Reversed,
            )
        } else {
            return Err(CertifyError::NonDescendingThresholds(values.to_vec()));
        };
        let mut canon = Vec::new();
        let mut remap = Vec::new();
        for (l, &t) in ordered.iter().enumerate() {
            if canon.last() != Some(&t) {
                canon.push(t);
                remap.push(l);
            }
        }
        Ok(Self {
            input: values.to_vec(),
            orientation,
            values: canon,
            level_remap: remap,
        })
    }

    /// Parses `"0.25,0,0"`.
    pub fn parse(text: &str) -> Result<Self, CertifyError> {
        let values = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CertifyError::Config(format!("bad threshold `{}`", s.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::canonicalize(&values)
    }

    /// Level chosen for a gap, or `None` when no threshold lies strictly below it.
    pub fn qualifying_level(&self, delta_p: f64, rule: ThresholdRule) -> Option<usize> {
        let j = match rule {
            ThresholdRule::Finest => self.values.iter().position(|&t| t < delta_p),
            ThresholdRule::Argmin => self.values.iter().rposition(|&t| t < delta_p),
        }?;
        Some(self.level_remap[j])
    }

    /// Level for a gap, falling back to and capped at `max_level`.
    pub fn level(&self, delta_p: f64, rule: ThresholdRule, max_level: usize) -> usize {
        self.qualifying_level(delta_p, rule)
            .unwrap_or(max_level)
            .min(max_level)
    }
}

impl Default for ThresholdSchedule {
    fn default() -> Self {
        Self::canonicalize(&[0.0, 0.0, 0.25]).expect("default thresholds are monotone")
    }
}

/// Level for `delta_p` under a strictly descending tuple with the finest-level
/// rule. `None` means no threshold lies below the gap.
pub fn t_thresh(delta_p: f64, thresholds: &[f64]) -> Result<Option<usize>, CertifyError> {
    if !(0.0..=1.0).contains(&delta_p) {
        return Err(CertifyError::Domain(format!(
            "probability gap {delta_p} outside [0, 1]"
        )));
    }
    Ok(ThresholdSchedule::strict(thresholds)?.qualifying_level(delta_p, ThresholdRule::Finest))
}
