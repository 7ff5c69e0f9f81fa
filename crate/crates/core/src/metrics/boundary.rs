//! Boundary pixels: those whose label differs from some label within
//! `margin` pixels in each axis (a clipped `(2m+1)^2` window).
//!
//! Computed as `dilate(labels) != labels || erode(labels) != labels` with
//! separable running max/min filters.

use std::collections::VecDeque;

use super::{GroundTruth, MetricsError};

/// Running extreme over a clipped window of radius `m`. `keep(a, b)` is true
/// when `a` should stay in front of `b`.
fn sliding(values: &[u32], m: usize, keep: impl Fn(u32, u32) -> bool, out: &mut [u32]) {
    let n = values.len();
    let mut window: VecDeque<usize> = VecDeque::new();
    let mut next = 0;
    for (x, slot) in out.iter_mut().enumerate() {
        let hi = (x + m).min(n - 1);
        while next <= hi {
            while window
                .back()
                .is_some_and(|&j| !keep(values[j], values[next]))
            {
                window.pop_back();
            }
            window.push_back(next);
            next += 1;
        }
        while window.front().is_some_and(|&j| j + m < x) {
            window.pop_front();
        }
        *slot = values[*window.front().expect("window covers x")];
    }
}

fn filter2d(
    labels: &[u32],
    height: usize,
    width: usize,
    m: usize,
    keep: impl Fn(u32, u32) -> bool + Copy,
) -> Vec<u32> {
    let mut rows = vec![0u32; labels.len()];
    for y in 0..height {
        let r = y * width..(y + 1) * width;
        sliding(&labels[r.clone()], m, keep, &mut rows[r]);
    }
    let mut out = vec![0u32; labels.len()];
    let mut col = vec![0u32; height];
    let mut col_out = vec![0u32; height];
    for x in 0..width {
        for y in 0..height {
            col[y] = rows[y * width + x];
        }
        sliding(&col, m, keep, &mut col_out);
        for y in 0..height {
            out[y * width + x] = col_out[y];
        }
    }
    out
}

pub fn boundary_map(
    gt: &GroundTruth,
    margin: usize,
    height: usize,
    width: usize,
) -> Result<Vec<bool>, MetricsError> {
    if height * width != gt.len() || (gt.height, gt.width) != (height, width) {
        return Err(MetricsError::ShapeMismatch {
            expected: height * width,
            found: gt.len(),
        });
    }
    if gt.is_empty() {
        return Ok(Vec::new());
    }
    let dilated = filter2d(&gt.labels, height, width, margin, |a, b| a >= b);
    let eroded = filter2d(&gt.labels, height, width, margin, |a, b| a <= b);
    Ok(gt
        .labels
        .iter()
        .zip(dilated.iter().zip(&eroded))
        .map(|(&l, (&hi, &lo))| hi != l || lo != l)
        .collect())
}
