//! Repeated-trial experiments on synthetic models, and threshold grid search.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{
    certify, CertificationConfig, CertifiedSegmentation, CertifyError, Mode, ThresholdSchedule,
    TopClassSource, ABSTAIN,
};
use crate::hierarchy::HierarchyGraph;
use crate::metrics::{abstain_rate, c_cig, cig, CcigDenominator, GroundTruth, MetricsError};
use crate::sampler::rng::split_seed;
use crate::sampler::{SampleError, SampleSource, SyntheticModel, SyntheticSpec};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("{0}")]
    Usage(String),
}

/// A synthetic model together with its ground truth.
#[derive(Debug, Clone)]
pub struct SyntheticInstance {
    pub classes: usize,
    pub distributions: Vec<f64>,
    pub ground_truth: GroundTruth,
}

impl SyntheticInstance {
    pub fn from_spec(spec: &SyntheticSpec) -> Result<Self, ExperimentError> {
        let (distributions, labels) = spec.expand()?;
        let n = labels.len();
        let (h, w) = match (spec.height, spec.width) {
            (Some(h), Some(w)) => (h, w),
            _ => (1, n),
        };
        Ok(Self {
            classes: spec.class_count,
            distributions,
            ground_truth: GroundTruth::new(h, w, labels, None)?,
        })
    }

    pub fn model(&self, seed: u64) -> Result<SyntheticModel, SampleError> {
        SyntheticModel::new(self.classes, self.distributions.clone(), seed)
    }

    /// True probability that component `i` samples into vertex `v`.
    pub fn vertex_probability(
        &self,
        hierarchy: &HierarchyGraph,
        i: usize,
        level: usize,
        v: u32,
    ) -> f64 {
        let row = &self.distributions[i * self.classes..(i + 1) * self.classes];
        let map = hierarchy.level_map(level);
        row.iter()
            .enumerate()
            .filter(|&(c, _)| map[c] == v)
            .map(|(_, p)| p)
            .sum()
    }

    /// Certified components whose vertex has true probability at most `tau`.
    pub fn type_one_errors(
        &self,
        hierarchy: &HierarchyGraph,
        seg: &CertifiedSegmentation,
        tau: f64,
    ) -> usize {
        (0..seg.len())
            .filter(|&i| {
                let v = seg.vertices[i];
                v != ABSTAIN
                    && self.vertex_probability(hierarchy, i, seg.levels[i] as usize, v) <= tau
            })
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelShare {
    pub level: usize,
    /// Percent of all components certified at this level.
    pub certified: f64,
    /// Percent of all components abstaining at this level.
    pub abstained: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: usize,
    pub mode: String,
    pub cig: f64,
    pub abstain_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub trials: usize,
    pub components: usize,
    pub alpha: f64,
    pub tau: f64,
    pub seed: u64,
    /// Trials with at least one certified component whose vertex has true
    /// probability at most tau, per mode.
    pub family_wise_errors: BTreeMap<String, usize>,
    pub empirical_fwer: BTreeMap<String, f64>,
    /// Trials where adaptive abstained more than flat on shared samples.
    pub monotonicity_violations: usize,
    pub level_distribution: BTreeMap<String, Vec<LevelShare>>,
    pub curves: Vec<CurvePoint>,
}

fn shares(totals: &[(usize, usize)], denom: usize) -> Vec<LevelShare> {
    totals
        .iter()
        .enumerate()
        .map(|(level, &(c, a))| LevelShare {
            level,
            certified: 100.0 * c as f64 / denom as f64,
            abstained: 100.0 * a as f64 / denom as f64,
        })
        .collect()
}

/// Runs `trials` independent adaptive and flat certifications of one instance.
///
/// Adaptive and flat runs of a trial see identical samples; the flat run
/// takes its candidate classes from the selection frames. `n_values` adds
/// CIG and abstain curves over the test sample count for adaptive, flat and
/// every fixed coarser level.
pub fn simulate(
    instance: &SyntheticInstance,
    hierarchy: &HierarchyGraph,
    config: &CertificationConfig,
    trials: usize,
    n_values: &[usize],
    seed: u64,
) -> Result<SimulationReport, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::Usage("trials must be at least 1".into()));
    }
    let adaptive_cfg = config.with_mode(Mode::Adaptive);
    let flat_cfg = CertificationConfig {
        mode: Mode::Flat,
        flat_topclass: TopClassSource::Selection,
        ..config.clone()
    };
    let levels = hierarchy.level_count();
    let comps = instance.ground_truth.len();
    let mut errors = BTreeMap::from([("adaptive".to_string(), 0), ("flat".to_string(), 0)]);
    let mut violations = 0;
    let mut totals = BTreeMap::from([
        ("adaptive".to_string(), vec![(0usize, 0usize); levels]),
        ("flat".to_string(), vec![(0usize, 0usize); levels]),
    ]);
    for t in 0..trials {
        let trial_seed = split_seed(seed, t as u64);
        let adaptive = certify(
            &mut instance.model(trial_seed)?,
            hierarchy,
            &adaptive_cfg,
            trial_seed,
        )?;
        let flat = certify(
            &mut instance.model(trial_seed)?,
            hierarchy,
            &flat_cfg,
            trial_seed,
        )?;
        if adaptive.abstain_count() > flat.abstain_count() {
            violations += 1;
        }
        for (name, seg) in [("adaptive", &adaptive), ("flat", &flat)] {
            if instance.type_one_errors(hierarchy, seg, config.tau) > 0 {
                *errors.get_mut(name).unwrap() += 1;
            }
            let tot = totals.get_mut(name).unwrap();
            for lc in &seg.header.level_counts {
                tot[lc.level].0 += lc.certified;
                tot[lc.level].1 += lc.abstained;
            }
        }
    }

    let mut curves = Vec::new();
    let mut modes = vec![Mode::Adaptive, Mode::Flat];
    modes.extend((1..levels).map(Mode::Fixed));
    for &n in n_values {
        for &mode in &modes {
            let cfg = CertificationConfig {
                n,
                mode,
                ..config.clone()
            };
            let (mut cig_sum, mut abstain_sum) = (0.0, 0.0);
            for t in 0..trials {
                let trial_seed = split_seed(seed, t as u64);
                let seg = certify(
                    &mut instance.model(trial_seed)?,
                    hierarchy,
                    &cfg,
                    trial_seed,
                )?;
                cig_sum += cig(&seg, &instance.ground_truth, hierarchy)?;
                abstain_sum += abstain_rate(&seg, &instance.ground_truth)?;
            }
            curves.push(CurvePoint {
                n,
                mode: match mode {
                    Mode::Fixed(l) => format!("fixed-{l}"),
                    m => m.name().to_string(),
                },
                cig: cig_sum / trials as f64,
                abstain_rate: abstain_sum / trials as f64,
            });
        }
    }

    let denom = trials * comps;
    Ok(SimulationReport {
        trials,
        components: comps,
        alpha: config.alpha,
        tau: config.tau,
        seed,
        empirical_fwer: errors
            .iter()
            .map(|(k, &v)| (k.clone(), v as f64 / trials as f64))
            .collect(),
        family_wise_errors: errors,
        monotonicity_violations: violations,
        level_distribution: totals
            .iter()
            .map(|(k, v)| (k.clone(), shares(v, denom)))
            .collect(),
        curves,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub rank: usize,
    pub thresholds: Vec<f64>,
    pub canonical: Vec<f64>,
    pub cig: f64,
    pub c_cig: f64,
    pub abstain_rate: f64,
}

/// Parses `"0.25,0;0.4,0.1,0"` into threshold schedules.
pub fn parse_grid(text: &str) -> Result<Vec<ThresholdSchedule>, ExperimentError> {
    let grid = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(ThresholdSchedule::parse)
        .collect::<Result<Vec<_>, _>>()?;
    if grid.is_empty() {
        return Err(ExperimentError::Usage("threshold grid is empty".into()));
    }
    Ok(grid)
}

/// Certifies once per candidate tuple with the same seed and ranks by CIG.
///
/// `open` must return a fresh source replaying the same samples each call.
pub fn gridsearch(
    mut open: impl FnMut() -> Result<Box<dyn SampleSource>, SampleError>,
    hierarchy: &HierarchyGraph,
    config: &CertificationConfig,
    grid: &[ThresholdSchedule],
    gt: &GroundTruth,
    seed: u64,
) -> Result<Vec<GridRow>, ExperimentError> {
    if grid.is_empty() {
        return Err(ExperimentError::Usage("threshold grid is empty".into()));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for schedule in grid {
        let cfg = CertificationConfig {
            thresholds: schedule.clone(),
            mode: Mode::Adaptive,
            ..config.clone()
        };
        let mut source = open()?;
        let seg = certify(source.as_mut(), hierarchy, &cfg, seed)?;
        rows.push(GridRow {
            rank: 0,
            thresholds: schedule.input.clone(),
            canonical: schedule.values.clone(),
            cig: cig(&seg, gt, hierarchy)?,
            c_cig: c_cig(&seg, gt, hierarchy, CcigDenominator::Present)?,
            abstain_rate: abstain_rate(&seg, gt)?,
        });
    }
    rows.sort_by(|a, b| b.cig.total_cmp(&a.cig));
    for (i, r) in rows.iter_mut().enumerate() {
        r.rank = i + 1;
    }
    Ok(rows)
}
