//! Level assignment and certification of every component.

pub mod config;
pub mod result_file;
pub mod thresholds;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hierarchy::{HierarchyGraph, VertexId};
use crate::sampler::{hsample, rng, selection_estimate, PixelCounts, SampleError, SampleSource};
use crate::stats::{binom_p_value, bonferroni_test, certified_radius, StatsError};

pub use config::{CertificationConfig, Mode, TopClassSource};
pub use result_file::{read_result, write_result};
pub use thresholds::{t_thresh, Orientation, ThresholdRule, ThresholdSchedule};

/// Vertex sentinel for an abstained component.
pub const ABSTAIN: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("{0}")]
    Stats(#[from] StatsError),
    #[error("thresholds are not strictly descending: {0:?}")]
    NonDescendingThresholds(Vec<f64>),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{what}: expected {expected}, found {found}")]
    DimMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed result file: {0}")]
    BadResultFile(String),
}

/// Per-component output of the level-selection stage.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelAssignment {
    pub levels: Vec<usize>,
    pub top_class: Vec<VertexId>,
    pub delta_p: Vec<f64>,
    /// Components whose top class was tied and broken towards the smaller id.
    pub ties: usize,
    /// Selection fell back to label frequencies.
    pub from_labels: bool,
}

/// Top class, runner-up score gap and whether the top was tied.
fn top_two(row: &[f64]) -> (usize, f64, bool) {
    let mut top = 0;
    for (c, &p) in row.iter().enumerate() {
        if p > row[top] {
            top = c;
        }
    }
    let second = row
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != top)
        .map(|(_, &p)| p)
        .fold(None, |acc: Option<f64>, p| {
            Some(acc.map_or(p, |a| a.max(p)))
        });
    let tie = second == Some(row[top]);
    let gap = row[top] - second.unwrap_or(0.0);
    (top, gap.clamp(0.0, 1.0), tie)
}

/// Draws the `n0` selection frames and assigns a level to every component.
///
/// Levels follow the mode: thresholded gaps for adaptive, 0 for flat and the
/// configured level for fixed.
pub fn get_component_levels(
    source: &mut dyn SampleSource,
    hierarchy: &HierarchyGraph,
    config: &CertificationConfig,
) -> Result<LevelAssignment, CertifyError> {
    let max_level = hierarchy.max_level();
    let est = selection_estimate(source, config.n0)?;
    let k = est.classes;
    let comps = est.mean.len() / k;
    let mut assignment = LevelAssignment {
        levels: Vec::with_capacity(comps),
        top_class: Vec::with_capacity(comps),
        delta_p: Vec::with_capacity(comps),
        ties: 0,
        from_labels: est.from_labels,
    };
    for row in est.mean.chunks_exact(k) {
        let (top, gap, tie) = top_two(row);
        let level = match config.mode {
            Mode::Adaptive => config
                .thresholds
                .level(gap, config.threshold_rule, max_level),
            Mode::Flat => 0,
            Mode::Fixed(l) => l,
        };
        assignment.levels.push(level);
        assignment.top_class.push(top as VertexId);
        assignment.delta_p.push(gap);
        assignment.ties += tie as usize;
    }
    Ok(assignment)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCount {
    pub level: usize,
    pub certified: usize,
    pub abstained: usize,
}

/// Provenance and summary stored as the JSON header of a result file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultHeader {
    pub engine: String,
    pub config: CertificationConfig,
    pub seed: u64,
    pub source: String,
    pub rng: String,
    pub components: usize,
    pub radius: f64,
    pub bonferroni_divisor: usize,
    pub abstain_count: usize,
    pub certified_count: usize,
    pub level_counts: Vec<LevelCount>,
    pub top_class_ties: usize,
    pub selection_from_labels: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedSegmentation {
    pub header: ResultHeader,
    /// Certified vertex per component, [`ABSTAIN`] otherwise.
    pub vertices: Vec<u32>,
    pub levels: Vec<u8>,
    pub p_values: Vec<f64>,
}

impl CertifiedSegmentation {
    /// Builds a result and its summary header from per-component records.
    pub fn assemble(
        config: &CertificationConfig,
        seed: u64,
        source: String,
        max_level: usize,
        vertices: Vec<u32>,
        levels: Vec<u8>,
        p_values: Vec<f64>,
    ) -> Result<Self, CertifyError> {
        let comps = vertices.len();
        if levels.len() != comps || p_values.len() != comps {
            return Err(CertifyError::DimMismatch {
                what: "per-component record lengths",
                expected: comps,
                found: levels.len().min(p_values.len()),
            });
        }
        let mut level_counts: Vec<LevelCount> = (0..=max_level)
            .map(|level| LevelCount {
                level,
                certified: 0,
                abstained: 0,
            })
            .collect();
        for (&v, &l) in vertices.iter().zip(&levels) {
            let lc = level_counts.get_mut(l as usize).ok_or_else(|| {
                CertifyError::Domain(format!("level {l} beyond coarsest level {max_level}"))
            })?;
            if v == ABSTAIN {
                lc.abstained += 1;
            } else {
                lc.certified += 1;
            }
        }
        let abstain_count = vertices.iter().filter(|&&v| v == ABSTAIN).count();
        let header = ResultHeader {
            engine: format!("hiercert {}", env!("CARGO_PKG_VERSION")),
            config: config.clone(),
            seed,
            source,
            rng: rng::ALGORITHM.to_string(),
            components: comps,
            radius: certified_radius(config.sigma, config.tau)?.value(),
            bonferroni_divisor: comps,
            abstain_count,
            certified_count: comps - abstain_count,
            level_counts,
            top_class_ties: 0,
            selection_from_labels: false,
        };
        Ok(Self {
            header,
            vertices,
            levels,
            p_values,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn result(&self, i: usize) -> Option<VertexId> {
        (self.vertices[i] != ABSTAIN).then_some(self.vertices[i])
    }

    pub fn radius(&self) -> f64 {
        self.header.radius
    }

    pub fn abstain_count(&self) -> usize {
        self.vertices.iter().filter(|&&v| v == ABSTAIN).count()
    }
}

fn argmax_count(row: &[u32]) -> VertexId {
    let mut best = 0;
    for (v, &c) in row.iter().enumerate() {
        if c > row[best] {
            best = v;
        }
    }
    best as VertexId
}

fn candidates(
    hierarchy: &HierarchyGraph,
    config: &CertificationConfig,
    assignment: &LevelAssignment,
    counts: &PixelCounts,
) -> Vec<VertexId> {
    let use_counts =
        config.mode != Mode::Adaptive && config.flat_topclass == TopClassSource::Counts;
    (0..assignment.levels.len())
        .into_par_iter()
        .map(|i| {
            if use_counts {
                argmax_count(counts.row(i))
            } else {
                hierarchy.ancestor_at_level(assignment.top_class[i], assignment.levels[i])
            }
        })
        .collect()
}

/// Runs the configured mode end to end.
///
/// `seed` is recorded for provenance; randomness lives in the source.
pub fn certify(
    source: &mut dyn SampleSource,
    hierarchy: &HierarchyGraph,
    config: &CertificationConfig,
    seed: u64,
) -> Result<CertifiedSegmentation, CertifyError> {
    config.validate()?;
    let max_level = hierarchy.max_level();
    if max_level > u8::MAX as usize {
        return Err(CertifyError::Config(format!(
            "{} levels exceed the result format",
            max_level + 1
        )));
    }
    if let Mode::Fixed(l) = config.mode {
        if l > max_level {
            return Err(CertifyError::Domain(format!(
                "level {l} beyond coarsest level {max_level}"
            )));
        }
    }
    if source.class_count() != hierarchy.leaf_count() {
        return Err(CertifyError::DimMismatch {
            what: "source classes vs hierarchy leaves",
            expected: hierarchy.leaf_count(),
            found: source.class_count(),
        });
    }
    certified_radius(config.sigma, config.tau)?;

    let assignment = get_component_levels(source, hierarchy, config)?;
    let counts = hsample(source, hierarchy, &assignment.levels, config.n)?;
    let vertices = candidates(hierarchy, config, &assignment, &counts);

    let n = config.n as u64;
    let p_values = vertices
        .par_iter()
        .enumerate()
        .map(|(i, &v)| binom_p_value(counts.get(i, v) as u64, n, config.tau))
        .collect::<Result<Vec<_>, _>>()?;
    let reject = bonferroni_test(&p_values, config.alpha)?;

    let vertices = vertices
        .iter()
        .zip(&reject)
        .map(|(&v, &r)| if r { v } else { ABSTAIN })
        .collect();
    let mut seg = CertifiedSegmentation::assemble(
        config,
        seed,
        source.fingerprint(),
        max_level,
        vertices,
        assignment.levels.iter().map(|&l| l as u8).collect(),
        p_values.iter().map(|p| p.value()).collect(),
    )?;
    seg.header.top_class_ties = assignment.ties;
    seg.header.selection_from_labels = assignment.from_labels;
    Ok(seg)
}

pub fn adaptive_certify(
    source: &mut dyn SampleSource,
    hierarchy: &HierarchyGraph,
    config: &CertificationConfig,
    seed: u64,
) -> Result<CertifiedSegmentation, CertifyError> {
    certify(source, hierarchy, &config.with_mode(Mode::Adaptive), seed)
}

/// Flat baseline: every component tested at its leaf.
pub fn seg_certify(
    source: &mut dyn SampleSource,
    hierarchy: &HierarchyGraph,
    config: &CertificationConfig,
    seed: u64,
) -> Result<CertifiedSegmentation, CertifyError> {
    certify(source, hierarchy, &config.with_mode(Mode::Flat), seed)
}

pub fn fixed_level_certify(
    source: &mut dyn SampleSource,
    hierarchy: &HierarchyGraph,
    config: &CertificationConfig,
    level: usize,
    seed: u64,
) -> Result<CertifiedSegmentation, CertifyError> {
    certify(
        source,
        hierarchy,
        &config.with_mode(Mode::Fixed(level)),
        seed,
    )
}
