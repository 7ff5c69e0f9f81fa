//! Synthetic base models with a known output distribution per pixel.
//!
//! The categorical at each pixel plays the role of the base model's output
//! under Gaussian input noise. Because the distribution is known exactly, the
//! ideal smoothed model can be evaluated in closed form, which is what the
//! guarantee experiments check against.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::rng::{frame_rng, uniform};
use super::{Capabilities, SampleError, SampleSource, POSTERIOR_TOLERANCE};

/// JSON description of a synthetic model.
///
/// Pixels are given either densely (`pixels`, one full distribution per row)
/// or as runs of identical pixels (`regions`, sparse `[class, probability]`
/// pairs). `label` optionally overrides the ground truth of a region, which
/// otherwise is the most probable class.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub class_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<Region>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pixels: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Region {
    pub count: usize,
    pub distribution: Vec<(u32, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u32>,
}

const DEMO_SPEC: &str = include_str!("../../data/demo_synthetic.json");

impl SyntheticSpec {
    /// Loads a spec file; the name `demo` selects the bundled demo spec.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, SampleError> {
        let path = path.as_ref();
        if path.as_os_str() == "demo" {
            return Self::demo();
        }
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| SampleError::BadSpec(e.to_string()))
    }

    pub fn demo() -> Result<Self, SampleError> {
        serde_json::from_str(DEMO_SPEC).map_err(|e| SampleError::BadSpec(e.to_string()))
    }

    /// Expands regions or rows into dense per-pixel distributions and ground truth.
    pub fn expand(&self) -> Result<(Vec<f64>, Vec<u32>), SampleError> {
        let k = self.class_count;
        if k == 0 {
            return Err(SampleError::BadSpec("class_count must be positive".into()));
        }
        if !self.regions.is_empty() && !self.pixels.is_empty() {
            return Err(SampleError::BadSpec(
                "give either `regions` or `pixels`, not both".into(),
            ));
        }
        let mut dist = Vec::new();
        let mut labels = Vec::new();
        for (r, region) in self.regions.iter().enumerate() {
            let mut row = vec![0.0; k];
            for &(c, p) in &region.distribution {
                if c as usize >= k {
                    return Err(SampleError::BadSpec(format!(
                        "region {r}: class {c} >= class_count {k}"
                    )));
                }
                row[c as usize] += p;
            }
            let label = match region.label {
                Some(l) if l as usize >= k => {
                    return Err(SampleError::BadSpec(format!(
                        "region {r}: label {l} >= class_count {k}"
                    )))
                }
                Some(l) => l,
                None => argmax(&row) as u32,
            };
            for _ in 0..region.count {
                dist.extend_from_slice(&row);
                labels.push(label);
            }
        }
        for (i, row) in self.pixels.iter().enumerate() {
            if row.len() != k {
                return Err(SampleError::BadSpec(format!(
                    "pixel {i}: expected {k} probabilities"
                )));
            }
            dist.extend_from_slice(row);
            labels.push(argmax(row) as u32);
        }
        let n = labels.len();
        if n == 0 {
            return Err(SampleError::BadSpec("spec describes no pixels".into()));
        }
        if let (Some(h), Some(w)) = (self.height, self.width) {
            if h * w != n {
                return Err(SampleError::BadSpec(format!(
                    "height*width = {} but spec has {n} pixels",
                    h * w
                )));
            }
        }
        Ok((dist, labels))
    }
}

fn argmax(row: &[f64]) -> usize {
    let mut best = 0;
    for (c, &p) in row.iter().enumerate() {
        if p > row[best] {
            best = c;
        }
    }
    best
}

/// A base model given by its per-pixel categorical output distribution.
#[derive(Debug, Clone)]
pub struct SyntheticModel {
    components: usize,
    classes: usize,
    distributions: Vec<f64>,
    // per pixel: support classes and their cumulative probabilities
    support: Vec<Vec<(u32, f64)>>,
    seed: u64,
    frame: u64,
    fingerprint: String,
}

impl SyntheticModel {
    /// `distributions` is row-major `components x classes`.
    pub fn new(classes: usize, distributions: Vec<f64>, seed: u64) -> Result<Self, SampleError> {
        if classes == 0 || distributions.is_empty() || !distributions.len().is_multiple_of(classes)
        {
            return Err(SampleError::BadSpec(format!(
                "{} probabilities do not form rows of {classes}",
                distributions.len()
            )));
        }
        let components = distributions.len() / classes;
        let mut support = Vec::with_capacity(components);
        for (i, row) in distributions.chunks_exact(classes).enumerate() {
            let total: f64 = row.iter().sum();
            if row.iter().any(|p| !(*p >= 0.0) || !p.is_finite())
                || (total - 1.0).abs() > POSTERIOR_TOLERANCE
            {
                return Err(SampleError::InvalidPosterior {
                    component: i,
                    reason: format!("row sums to {total}"),
                });
            }
            let mut cum = 0.0;
            let mut s = Vec::new();
            for (c, &p) in row.iter().enumerate() {
                if p > 0.0 {
                    cum += p / total;
                    s.push((c as u32, cum));
                }
            }
            support.push(s);
        }
        let mut hasher = Sha256::new();
        hasher.update(b"synthetic");
        hasher.update((classes as u64).to_le_bytes());
        for p in &distributions {
            hasher.update(p.to_le_bytes());
        }
        let fingerprint = format!("synthetic:{}", hex_digest(hasher));
        Ok(Self {
            components,
            classes,
            distributions,
            support,
            seed,
            frame: 0,
            fingerprint,
        })
    }

    pub fn from_spec(spec: &SyntheticSpec, seed: u64) -> Result<Self, SampleError> {
        let (dist, _) = spec.expand()?;
        Self::new(spec.class_count, dist, seed)
    }

    pub fn distribution(&self, component: usize) -> &[f64] {
        &self.distributions[component * self.classes..(component + 1) * self.classes]
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Frames handed out so far.
    pub fn frames_drawn(&self) -> u64 {
        self.frame
    }
}

pub(crate) fn hex_digest(hasher: Sha256) -> String {
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl SampleSource for SyntheticModel {
    fn component_count(&self) -> usize {
        self.components
    }

    fn class_count(&self) -> usize {
        self.classes
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            labels: true,
            posteriors: true,
        }
    }

    fn remaining_frames(&self) -> Option<u64> {
        None
    }

    fn next_posteriors(&mut self, out: &mut [f64]) -> Result<(), SampleError> {
        // the model's posterior is its distribution; noise lives in the labels
        out.copy_from_slice(&self.distributions);
        self.frame += 1;
        Ok(())
    }

    fn next_labels(&mut self, out: &mut [u32]) -> Result<(), SampleError> {
        let mut rng = frame_rng(self.seed, self.frame);
        self.frame += 1;
        for (slot, support) in out.iter_mut().zip(&self.support) {
            let u = uniform(&mut rng);
            *slot = support
                .iter()
                .find(|&&(_, cum)| u < cum)
                .unwrap_or_else(|| support.last().expect("non-empty support"))
                .0;
        }
        Ok(())
    }

    fn fingerprint(&self) -> String {
        self.fingerprint.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn posterior_is_distribution() {
        let mut m = SyntheticModel::new(2, vec![0.9, 0.1], 1).unwrap();
        let mut out = vec![0.0; 2];
        for _ in 0..3 {
            m.next_posteriors(&mut out).unwrap();
            assert_eq!(out, vec![0.9, 0.1]);
        }
    }

    #[test]
    fn deterministic_labels() {
        let dist = vec![0.5, 0.3, 0.2, 0.1, 0.1, 0.8];
        let mut a = SyntheticModel::new(3, dist.clone(), 42).unwrap();
        let mut b = SyntheticModel::new(3, dist, 42).unwrap();
        let (mut la, mut lb) = (vec![0; 2], vec![0; 2]);
        for _ in 0..50 {
            a.next_labels(&mut la).unwrap();
            b.next_labels(&mut lb).unwrap();
            assert_eq!(la, lb);
        }
    }

    #[test]
    fn one_hot_is_constant() {
        let mut m = SyntheticModel::new(3, vec![0.0, 1.0, 0.0], 5).unwrap();
        let mut out = vec![0; 1];
        for _ in 0..100 {
            m.next_labels(&mut out).unwrap();
            assert_eq!(out[0], 1);
        }
    }

    #[test]
    fn rejects_non_stochastic_rows() {
        assert!(SyntheticModel::new(2, vec![0.5, 0.4], 0).is_err());
        assert!(SyntheticModel::new(2, vec![1.2, -0.2], 0).is_err());
        assert!(SyntheticModel::new(2, vec![0.5, 0.5, 0.5], 0).is_err());
    }

    #[test]
    fn spec_regions_expand() {
        let spec: SyntheticSpec = serde_json::from_str(
            r#"{"class_count": 3, "regions": [
                {"count": 2, "distribution": [[0, 0.7], [1, 0.3]]},
                {"count": 1, "distribution": [[2, 1.0]], "label": 1}
            ]}"#,
        )
        .unwrap();
        let (dist, labels) = spec.expand().unwrap();
        assert_eq!(labels, vec![0, 0, 1]);
        assert_eq!(&dist[6..9], &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn spec_shape_checked() {
        let spec: SyntheticSpec = serde_json::from_str(
            r#"{"class_count": 2, "height": 2, "width": 2,
                "regions": [{"count": 3, "distribution": [[0, 1.0]]}]}"#,
        )
        .unwrap();
        assert!(spec.expand().is_err());
    }

    #[test]
    fn demo_spec_loads() {
        let spec = SyntheticSpec::demo().unwrap();
        let model = SyntheticModel::from_spec(&spec, 0).unwrap();
        assert_eq!(
            model.component_count(),
            spec.height.unwrap() * spec.width.unwrap()
        );
    }
}
