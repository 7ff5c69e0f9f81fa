#![allow(dead_code)]

use std::path::PathBuf;

use hiercert::hierarchy::{HierarchyDocument, HierarchyGraph, VertexRecord};
use hiercert::metrics::GroundTruth;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn cityscapes() -> HierarchyGraph {
    HierarchyGraph::from_path(data_path("cityscapes_hierarchy.json")).unwrap()
}

/// Random forest with `1..=max_levels` levels. Some vertices skip levels and
/// some stay parentless.
pub fn random_hierarchy(
    rng: &mut impl Rng,
    max_levels: usize,
    max_leaves: usize,
) -> HierarchyGraph {
    let levels = rng.random_range(1..=max_levels);
    let leaves = rng.random_range(2..=max_leaves);
    let mut level_of: Vec<usize> = vec![0; leaves];
    let mut parent: Vec<Option<u32>> = vec![None; leaves];
    let mut frontier: Vec<u32> = (0..leaves as u32).collect();
    for l in 1..levels {
        if frontier.is_empty() {
            break;
        }
        let count = rng.random_range(1..=frontier.len().div_ceil(2));
        let first = level_of.len() as u32;
        let fresh: Vec<u32> = (first..first + count as u32).collect();
        level_of.extend(std::iter::repeat_n(l, count));
        parent.extend(std::iter::repeat_n(None, count));
        frontier.shuffle(rng);
        let mut rest = Vec::new();
        for (j, &v) in frontier.iter().enumerate() {
            if j < count {
                parent[v as usize] = Some(fresh[j]);
            } else if rng.random_bool(0.7) {
                parent[v as usize] = Some(fresh[rng.random_range(0..count)]);
            } else {
                rest.push(v);
            }
        }
        rest.extend(fresh);
        frontier = rest;
    }
    let vertices = (0..level_of.len())
        .map(|i| VertexRecord {
            id: i as u32,
            name: format!("v{i}"),
            level: level_of[i],
            parent: parent[i],
        })
        .collect();
    HierarchyGraph::from_document(HierarchyDocument {
        levels,
        vertices,
        ..Default::default()
    })
    .unwrap()
}

/// Random per-pixel distributions: one-hot, peaked, or spread out.
pub fn random_distributions(rng: &mut impl Rng, pixels: usize, classes: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(pixels * classes);
    for _ in 0..pixels {
        let mut row = vec![0.0; classes];
        match rng.random_range(0..3) {
            0 => row[rng.random_range(0..classes)] = 1.0,
            1 => {
                let top = rng.random_range(0..classes);
                let mass: f64 = rng.random_range(0.5..1.0);
                row[top] = mass;
                let other = rng.random_range(0..classes);
                row[other] += 1.0 - mass;
            }
            _ => {
                let power = rng.random_range(1.0..6.0);
                for p in row.iter_mut() {
                    *p = rng.random::<f64>().powf(power);
                }
                let total: f64 = row.iter().sum();
                if total == 0.0 {
                    row[0] = 1.0;
                } else {
                    row.iter_mut().for_each(|p| *p /= total);
                }
            }
        }
        out.extend(row);
    }
    out
}

pub fn random_grid(rng: &mut impl Rng, height: usize, width: usize, classes: u32) -> GroundTruth {
    // blocky labels so that boundaries are neither everywhere nor nowhere
    let bh = rng.random_range(1..=8);
    let bw = rng.random_range(1..=8);
    let blocks: Vec<u32> = (0..height.div_ceil(bh) * width.div_ceil(bw))
        .map(|_| rng.random_range(0..classes))
        .collect();
    let bpr = width.div_ceil(bw);
    let labels = (0..height * width)
        .map(|i| blocks[(i / width / bh) * bpr + (i % width) / bw])
        .collect();
    GroundTruth::new(height, width, labels, None).unwrap()
}

/// Marks pixels whose clipped `(2m+1)^2` window holds another label.
pub fn naive_boundary(gt: &GroundTruth, margin: usize) -> Vec<bool> {
    let (h, w) = (gt.height, gt.width);
    let mut out = vec![false; h * w];
    for y in 0..h {
        for x in 0..w {
            let l = gt.labels[y * w + x];
            'scan: for yy in y.saturating_sub(margin)..=(y + margin).min(h - 1) {
                for xx in x.saturating_sub(margin)..=(x + margin).min(w - 1) {
                    if gt.labels[yy * w + xx] != l {
                        out[y * w + x] = true;
                        break 'scan;
                    }
                }
            }
        }
    }
    out
}

/// P[Bin(n, m/10) >= k] by exact integer summation.
pub fn exact_upper_tail(k: u64, n: u64, m: u64) -> f64 {
    let mut binom: u128 = 1;
    let mut num: u128 = 0;
    for j in 0..=n {
        if j > 0 {
            binom = binom * (n - j + 1) as u128 / j as u128;
        }
        if j >= k {
            num += binom * (m as u128).pow(j as u32) * ((10 - m) as u128).pow((n - j) as u32);
        }
    }
    num as f64 / 10u128.pow(n as u32) as f64
}

/// Standard normal CDF from an erf Taylor series (small arguments) and the
/// Laplace continued fraction for erfc (large arguments).
pub fn reference_norm_cdf(z: f64) -> f64 {
    let x = z.abs() / std::f64::consts::SQRT_2;
    let erfc = if x < 2.0 {
        let mut term = x;
        let mut sum = x;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= -x * x / k;
            let add = term / (2.0 * k + 1.0);
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        1.0 - sum * 2.0 / std::f64::consts::PI.sqrt()
    } else {
        // evaluate the fraction bottom-up with a fixed depth
        let mut f = 0.0;
        for k in (1..=200).rev() {
            f = (k as f64 / 2.0) / (x + f);
        }
        (-x * x).exp() / std::f64::consts::PI.sqrt() / (x + f)
    };
    if z < 0.0 {
        0.5 * erfc
    } else {
        1.0 - 0.5 * erfc
    }
}
