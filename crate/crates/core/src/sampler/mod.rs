//! Monte-Carlo samples of the base model under Gaussian input noise.
//!
//! The noise itself belongs to the backend. A [`SampleSource`] hands out
//! frames, each one joint evaluation of the model on an independently
//! perturbed input, either as posterior maps or as leaf label maps.

pub mod process;
pub mod rng;
pub mod stream;
pub mod synthetic;

use rayon::prelude::*;
use thiserror::Error;

use crate::hierarchy::{HierarchyGraph, VertexId};

pub use process::{Handshake, ProcessSource};
pub use stream::{StreamHeader, StreamKind, StreamSource, StreamWriter};
pub use synthetic::{SyntheticModel, SyntheticSpec};

/// Allowed deviation of a posterior row sum from 1.
pub const POSTERIOR_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("not an HCS1 stream: {0}")]
    BadMagic(String),
    #[error("unknown stream kind {0}")]
    UnknownKind(u8),
    #[error("header mismatch: {0}")]
    HeaderMismatch(String),
    #[error("external model process failed: {0}")]
    ProcessHandshakeFailure(String),
    #[error("source cannot provide {0}")]
    UnsupportedCapability(&'static str),
    #[error("stream exhausted: {requested} frames needed, {available} available")]
    InsufficientSamples { requested: u64, available: u64 },
    #[error("stream ended inside frame {0}")]
    TruncatedFrame(u32),
    #[error("component {component}: label {label} outside 0..{class_count}")]
    LabelOutOfRange {
        component: usize,
        label: u32,
        class_count: usize,
    },
    #[error("component {component}: invalid posterior ({reason})")]
    InvalidPosterior { component: usize, reason: String },
    #[error("component {component}: level {level} exceeds hierarchy maximum {max_level}")]
    LevelOutOfRange {
        component: usize,
        level: usize,
        max_level: usize,
    },
    #[error("invalid synthetic spec: {0}")]
    BadSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capabilities {
    pub labels: bool,
    pub posteriors: bool,
}

/// A sequential, single-consumer stream of model evaluations.
pub trait SampleSource {
    fn component_count(&self) -> usize;
    fn class_count(&self) -> usize;
    fn capabilities(&self) -> Capabilities;
    /// Frames left, or `None` for unbounded sources.
    fn remaining_frames(&self) -> Option<u64>;
    /// Next frame as posteriors, row-major `N x |Y|`.
    fn next_posteriors(&mut self, out: &mut [f64]) -> Result<(), SampleError>;
    /// Next frame as leaf labels.
    fn next_labels(&mut self, out: &mut [u32]) -> Result<(), SampleError>;
    /// Stable identity of the source for provenance records.
    fn fingerprint(&self) -> String;
}

impl<S: SampleSource + ?Sized> SampleSource for Box<S> {
    fn component_count(&self) -> usize {
        (**self).component_count()
    }
    fn class_count(&self) -> usize {
        (**self).class_count()
    }
    fn capabilities(&self) -> Capabilities {
        (**self).capabilities()
    }
    fn remaining_frames(&self) -> Option<u64> {
        (**self).remaining_frames()
    }
    fn next_posteriors(&mut self, out: &mut [f64]) -> Result<(), SampleError> {
        (**self).next_posteriors(out)
    }
    fn next_labels(&mut self, out: &mut [u32]) -> Result<(), SampleError> {
        (**self).next_labels(out)
    }
    fn fingerprint(&self) -> String {
        (**self).fingerprint()
    }
}

/// One frame of posteriors, row-major `N x |Y|`.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorSample {
    pub classes: usize,
    pub posteriors: Vec<f64>,
}

impl PosteriorSample {
    pub fn row(&self, component: usize) -> &[f64] {
        &self.posteriors[component * self.classes..(component + 1) * self.classes]
    }
}

/// Per-pixel vertex hit counts accumulated over the test frames.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelCounts {
    components: usize,
    vertices: usize,
    samples: u64,
    counts: Vec<u32>,
}

impl PixelCounts {
    pub fn new(components: usize, vertices: usize) -> Self {
        Self {
            components,
            vertices,
            samples: 0,
            counts: vec![0; components * vertices],
        }
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Frames accumulated so far (`n`).
    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn get(&self, component: usize, vertex: VertexId) -> u32 {
        self.counts[component * self.vertices + vertex as usize]
    }

    pub fn row(&self, component: usize) -> &[u32] {
        &self.counts[component * self.vertices..(component + 1) * self.vertices]
    }
}

fn ensure_frames(source: &dyn SampleSource, wanted: u64) -> Result<(), SampleError> {
    match source.remaining_frames() {
        Some(available) if available < wanted => Err(SampleError::InsufficientSamples {
            requested: wanted,
            available,
        }),
        _ => Ok(()),
    }
}

/// Draws `n0` posterior frames.
pub fn sample_posteriors(
    source: &mut dyn SampleSource,
    n0: usize,
) -> Result<Vec<PosteriorSample>, SampleError> {
    if !source.capabilities().posteriors {
        return Err(SampleError::UnsupportedCapability("posteriors"));
    }
    ensure_frames(source, n0 as u64)?;
    let classes = source.class_count();
    let len = source.component_count() * classes;
    (0..n0)
        .map(|_| {
            let mut posteriors = vec![0.0; len];
            source.next_posteriors(&mut posteriors)?;
            Ok(PosteriorSample {
                classes,
                posteriors,
            })
        })
        .collect()
}

/// Mean class scores over `n0` selection frames.
#[derive(Debug, Clone)]
pub struct SelectionEstimate {
    pub classes: usize,
    /// Row-major `N x |Y|` mean posteriors (or label frequencies).
    pub mean: Vec<f64>,
    /// True when the source had no posteriors and label frequencies were used.
    pub from_labels: bool,
}

/// Averages `n0` frames for level selection.
///
/// Posterior-capable sources contribute mean posteriors. Labels-only sources
/// fall back to empirical label frequencies.
pub fn selection_estimate(
    source: &mut dyn SampleSource,
    n0: usize,
) -> Result<SelectionEstimate, SampleError> {
    let classes = source.class_count();
    let comps = source.component_count();
    ensure_frames(source, n0 as u64)?;
    let mut sum = vec![0.0f64; comps * classes];
    let from_labels = !source.capabilities().posteriors;
    if from_labels {
        let mut labels = vec![0u32; comps];
        for _ in 0..n0 {
            source.next_labels(&mut labels)?;
            for (i, &l) in labels.iter().enumerate() {
                sum[i * classes + l as usize] += 1.0;
            }
        }
    } else {
        let mut frame = vec![0.0f64; comps * classes];
        for _ in 0..n0 {
            source.next_posteriors(&mut frame)?;
            for (s, p) in sum.iter_mut().zip(&frame) {
                *s += p;
            }
        }
    }
    let scale = 1.0 / n0 as f64;
    for s in &mut sum {
        *s *= scale;
    }
    Ok(SelectionEstimate {
        classes,
        mean: sum,
        from_labels,
    })
}

/// Pixel block size for parallel count accumulation.
const COUNT_BLOCK: usize = 4096;

/// Adaptive sampling: draws `n` fresh label frames and counts, per pixel, the
/// vertex each sampled leaf maps to at that pixel's level.
pub fn hsample(
    source: &mut dyn SampleSource,
    hierarchy: &HierarchyGraph,
    levels: &[usize],
    n: usize,
) -> Result<PixelCounts, SampleError> {
    let comps = source.component_count();
    assert_eq!(levels.len(), comps, "one level per component");
    let max_level = hierarchy.max_level();
    if let Some((component, &level)) = levels.iter().enumerate().find(|(_, &l)| l > max_level) {
        return Err(SampleError::LevelOutOfRange {
            component,
            level,
            max_level,
        });
    }
    ensure_frames(source, n as u64)?;

    let leaves = hierarchy.leaf_count();
    let vertices = hierarchy.vertex_count();
    let mut counts = PixelCounts::new(comps, vertices);
    let mut labels = vec![0u32; comps];
    for _ in 0..n {
        source.next_labels(&mut labels)?;
        if let Some((component, &label)) = labels
            .iter()
            .enumerate()
            .find(|(_, &l)| l as usize >= leaves)
        {
            return Err(SampleError::LabelOutOfRange {
                component,
                label,
                class_count: leaves,
            });
        }
        counts
            .counts
            .par_chunks_mut(COUNT_BLOCK * vertices)
            .enumerate()
            .for_each(|(block, chunk)| {
                let base = block * COUNT_BLOCK;
                for (offset, row) in chunk.chunks_exact_mut(vertices).enumerate() {
                    let i = base + offset;
                    let v = hierarchy.level_map(levels[i])[labels[i] as usize];
                    row[v as usize] += 1;
                }
            });
        counts.samples += 1;
    }
    Ok(counts)
}
