//! Certified information gain, abstain rates, boundary stratification, mIoU.
//!
//! Pixels whose ground truth is the ignore label are left out of every
//! numerator and denominator.

pub mod boundary;
pub mod ground_truth;

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{CertifiedSegmentation, ABSTAIN};
use crate::hierarchy::{HierarchyGraph, VertexId};

pub use boundary::boundary_map;
pub use ground_truth::{GroundTruth, Sidecar};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad ground-truth file: {0}")]
    Format(String),
    #[error("shape mismatch: expected {expected} pixels, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("{what}: expected {expected}, found {found}")]
    DimMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("pixel {index}: label {label} is not a leaf (0..{leaf_count})")]
    LabelOutOfRange {
        index: usize,
        label: u32,
        leaf_count: usize,
    },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

/// Denominator of the class-average CIG.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CcigDenominator {
    /// Classes present in the ground truth.
    #[default]
    Present,
    /// Every leaf class, present or not.
    All,
}

impl std::str::FromStr for CcigDenominator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "present" => Ok(Self::Present),
            "all" => Ok(Self::All),
            other => Err(format!(
                "unknown ccig denominator `{other}` (expected present|all)"
            )),
        }
    }
}

fn check_dims(
    result: &CertifiedSegmentation,
    gt: &GroundTruth,
    hierarchy: &HierarchyGraph,
) -> Result<(), MetricsError> {
    if result.len() != gt.len() {
        return Err(MetricsError::DimMismatch {
            what: "result vs ground-truth pixels",
            expected: gt.len(),
            found: result.len(),
        });
    }
    gt.check_labels(hierarchy.leaf_count())?;
    if let Some(&l) = result
        .levels
        .iter()
        .find(|&&l| l as usize > hierarchy.max_level())
    {
        return Err(MetricsError::DimMismatch {
            what: "result level vs hierarchy levels",
            expected: hierarchy.level_count(),
            found: l as usize + 1,
        });
    }
    let vc = hierarchy.vertex_count();
    if let Some(&v) = result
        .vertices
        .iter()
        .find(|&&v| v != ABSTAIN && v as usize >= vc)
    {
        return Err(MetricsError::DimMismatch {
            what: "result vertex vs hierarchy vertices",
            expected: vc,
            found: v as usize + 1,
        });
    }
    Ok(())
}

/// Information gain of certifying vertex `v`, scaled to `[0, 1]`.
pub fn information_gain(hierarchy: &HierarchyGraph, v: VertexId) -> f64 {
    let leaves = hierarchy.leaf_count() as f64;
    if hierarchy.leaf_count() == 1 {
        return 1.0;
    }
    (leaves.ln() - (hierarchy.generality(v) as f64).ln()) / leaves.ln()
}

/// Per-pixel CIG contribution; `None` for ignore pixels.
fn contributions(
    result: &CertifiedSegmentation,
    gt: &GroundTruth,
    hierarchy: &HierarchyGraph,
) -> Vec<Option<f64>> {
    (0..gt.len())
        .map(|i| {
            if !gt.is_valid(i) {
                return None;
            }
            let v = result.vertices[i];
            let correct = v != ABSTAIN
                && v == hierarchy.ancestor_at_level(gt.labels[i], result.levels[i] as usize);
            Some(if correct {
                information_gain(hierarchy, v)
            } else {
                0.0
            })
        })
        .collect()
}

fn mean_of(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| sum / count as f64)
}

fn masked_cig(contrib: &[Option<f64>], mask: impl Fn(usize) -> bool) -> Option<f64> {
    mean_of(
        contrib
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask(i))
            .filter_map(|(_, c)| *c),
    )
}

pub fn cig(
    result: &CertifiedSegmentation,
    gt: &GroundTruth,
    hierarchy: &HierarchyGraph,
) -> Result<f64, MetricsError> {
    check_dims(result, gt, hierarchy)?;
    Ok(masked_cig(&contributions(result, gt, hierarchy), |_| true).unwrap_or(0.0))
}

/// Mean contribution over pixels of class `class`, `None` when absent.
pub fn per_class_cig(
    result: &CertifiedSegmentation,
    gt: &GroundTruth,
    hierarchy: &HierarchyGraph,
    class: u32,
) -> Result<Option<f64>, MetricsError> {
    check_dims(result, gt, hierarchy)?;
    let contrib = contributions(result, gt, hierarchy);
    Ok(masked_cig(&contrib, |i| gt.labels[i] == class))
}

fn class_average(per_class: &[Option<f64>], denominator: CcigDenominator) -> f64 {
    let present: Vec<f64> = per_class.iter().flatten().copied().collect();
    let sum: f64 = present.iter().sum();
    let count = match denominator {
        CcigDenominator::Present => present.len(),
        CcigDenominator::All => per_class.len(),
    };
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

fn per_class_contributions(
    contrib: &[Option<f64>],
    gt: &GroundTruth,
    leaf_count: usize,
) -> Vec<Option<f64>> {
    let mut sums = vec![(0.0, 0usize); leaf_count];
    for (i, c) in contrib.iter().enumerate() {
        if let Some(c) = c {
            let s = &mut sums[gt.labels[i] as usize];
            s.0 += c;
            s.1 += 1;
        }
    }
    sums.into_iter()
        .map(|(s, n)| (n > 0).then(|| s / n as f64))
        .collect()
}

pub fn c_cig(
    result: &CertifiedSegmentation,
    gt: &GroundTruth,
    hierarchy: &HierarchyGraph,
    denominator: CcigDenominator,
) -> Result<f64, MetricsError> {
    check_dims(result, gt, hierarchy)?;
    let contrib = contributions(result, gt, hierarchy);
    Ok(class_average(
        &per_class_contributions(&contrib, gt, hierarchy.leaf_count()),
        denominator,
    ))
}

/// Percentage of non-ignore pixels that abstain.
pub fn abstain_rate(result: &CertifiedSegmentation, gt: &GroundTruth) -> Result<f64, MetricsError> {
    if result.len() != gt.len() {
        return Err(MetricsError::DimMismatch {
            what: "result vs ground-truth pixels",
            expected: gt.len(),
            found: result.len(),
        });
    }
    Ok(masked_abstain(result, gt, |_| true).unwrap_or(0.0))
}

fn masked_abstain(
    result: &CertifiedSegmentation,
    gt: &GroundTruth,
    mask: impl Fn(usize) -> bool,
) -> Option<f64> {
    mean_of(
        (0..gt.len())
            .filter(|&i| gt.is_valid(i) && mask(i))
            .map(|i| {
                if result.vertices[i] == ABSTAIN {
                    100.0
                } else {
                    0.0
                }
            }),
    )
}

/// Mean over present classes of the per-class abstain percentage.
pub fn class_abstain_rate(
    result: &CertifiedSegmentation,
    gt: &GroundTruth,
) -> Result<f64, MetricsError> {
    abstain_rate(result, gt)?;
    let mut per: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for i in (0..gt.len()).filter(|&i| gt.is_valid(i)) {
        let e = per.entry(gt.labels[i]).or_default();
        e.0 += (result.vertices[i] == ABSTAIN) as usize;
        e.1 += 1;
    }
    Ok(mean_of(per.values().map(|&(a, n)| 100.0 * a as f64 / n as f64)).unwrap_or(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stratum {
    pub pixels: usize,
    pub abstain_rate: f64,
    pub cig: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StratifiedReport {
    /// `None` when no non-ignore pixel lies on a boundary.
    pub boundary: Option<Stratum>,
    pub non_boundary: Option<Stratum>,
}

pub fn stratified_metrics(
    result: &CertifiedSegmentation,
    gt: &GroundTruth,
    hierarchy: &HierarchyGraph,
    mask: &[bool],
) -> Result<StratifiedReport, MetricsError> {
    check_dims(result, gt, hierarchy)?;
    if mask.len() != gt.len() {
        return Err(MetricsError::ShapeMismatch {
            expected: gt.len(),
            found: mask.len(),
        });
    }
    let contrib = contributions(result, gt, hierarchy);
    let stratum = |inside: bool| {
        let pixels = (0..gt.len())
            .filter(|&i| gt.is_valid(i) && mask[i] == inside)
            .count();
        (pixels > 0).then(|| Stratum {
            pixels,
            abstain_rate: masked_abstain(result, gt, |i| mask[i] == inside).unwrap_or(0.0),
            cig: masked_cig(&contrib, |i| mask[i] == inside).unwrap_or(0.0),
        })
    };
    Ok(StratifiedReport {
        boundary: stratum(true),
        non_boundary: stratum(false),
    })
}

/// Leaf predictions of a certified result; abstained and non-leaf pixels
/// predict nothing.
pub fn leaf_prediction(
    result: &CertifiedSegmentation,
    hierarchy: &HierarchyGraph,
) -> Vec<Option<u32>> {
    result
        .vertices
        .iter()
        .map(|&v| (v != ABSTAIN && hierarchy.is_leaf(v)).then_some(v))
        .collect()
}

/// Mean IoU over classes present in the ground truth.
pub fn miou(pred: &[Option<u32>], gt: &GroundTruth) -> Result<f64, MetricsError> {
    if pred.len() != gt.len() {
        return Err(MetricsError::DimMismatch {
            what: "prediction vs ground-truth pixels",
            expected: gt.len(),
            found: pred.len(),
        });
    }
    // class -> (intersection, union)
    let mut iou: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for i in (0..gt.len()).filter(|&i| gt.is_valid(i)) {
        iou.entry(gt.labels[i]).or_default();
    }
    for i in (0..gt.len()).filter(|&i| gt.is_valid(i)) {
        let g = gt.labels[i];
        match pred[i] {
            Some(p) if p == g => {
                let e = iou.get_mut(&g).expect("present");
                e.0 += 1;
                e.1 += 1;
            }
            other => {
                iou.get_mut(&g).expect("present").1 += 1;
                if let Some(e) = other.and_then(|p| iou.get_mut(&p)) {
                    e.1 += 1;
                }
            }
        }
    }
    Ok(mean_of(iou.values().map(|&(i, u)| i as f64 / u as f64)).unwrap_or(0.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: u32,
    pub name: String,
    pub pixels: usize,
    pub cig: Option<f64>,
    /// Percentage of the class's pixels that were certified.
    pub certified_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub ignore_label: Option<u32>,
    pub ignore_excluded_from_denominators: bool,
    pub ccig_denominator: CcigDenominator,
    pub boundary_margin: usize,
    pub miou_prediction: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub conventions: Conventions,
    pub pixels: usize,
    pub valid_pixels: usize,
    pub radius: f64,
    pub cig: f64,
    pub c_cig: f64,
    pub abstain_rate: f64,
    pub class_abstain_rate: f64,
    pub miou: f64,
    pub boundary: StratifiedReport,
    pub per_class: Vec<ClassReport>,
}

pub fn evaluate(
    result: &CertifiedSegmentation,
    gt: &GroundTruth,
    hierarchy: &HierarchyGraph,
    margin: usize,
    denominator: CcigDenominator,
) -> Result<MetricsReport, MetricsError> {
    check_dims(result, gt, hierarchy)?;
    let contrib = contributions(result, gt, hierarchy);
    let per_class_cig = per_class_contributions(&contrib, gt, hierarchy.leaf_count());
    let mask = boundary_map(gt, margin, gt.height, gt.width)?;
    let mut class_pixels = vec![(0usize, 0usize); hierarchy.leaf_count()];
    for i in (0..gt.len()).filter(|&i| gt.is_valid(i)) {
        let e = &mut class_pixels[gt.labels[i] as usize];
        e.0 += 1;
        e.1 += (result.vertices[i] != ABSTAIN) as usize;
    }
    let per_class = (0..hierarchy.leaf_count())
        .map(|c| {
            let name = hierarchy.vertex(c as VertexId).name.clone();
            let (pixels, certified) = class_pixels[c];
            ClassReport {
                class: c as u32,
                color: hierarchy.colors().get(&name).cloned(),
                name,
                pixels,
                cig: per_class_cig[c],
                certified_rate: (pixels > 0).then(|| 100.0 * certified as f64 / pixels as f64),
            }
        })
        .collect();
    Ok(MetricsReport {
        conventions: Conventions {
            ignore_label: gt.ignore,
            ignore_excluded_from_denominators: true,
            ccig_denominator: denominator,
            boundary_margin: margin,
            miou_prediction: "certified leaf; abstain or coarser vertex predicts no class".into(),
        },
        pixels: gt.len(),
        valid_pixels: gt.valid_count(),
        radius: result.radius(),
        cig: masked_cig(&contrib, |_| true).unwrap_or(0.0),
        c_cig: class_average(&per_class_cig, denominator),
        abstain_rate: abstain_rate(result, gt)?,
        class_abstain_rate: class_abstain_rate(result, gt)?,
        miou: miou(&leaf_prediction(result, hierarchy), gt)?,
        boundary: stratified_metrics(result, gt, hierarchy, &mask)?,
        per_class,
    })
}

impl MetricsReport {
    /// Per-class table as CSV.
    pub fn write_csv(&self, writer: impl Write) -> Result<(), MetricsError> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["class", "name", "pixels", "cig", "certified_rate"])?;
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        for c in &self.per_class {
            w.write_record([
                c.class.to_string(),
                c.name.clone(),
                c.pixels.to_string(),
                opt(c.cig),
                opt(c.certified_rate),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
