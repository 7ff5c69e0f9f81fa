//! Ground-truth label grids.
//!
//! Two on-disk forms are read: binary PGM (`P5`, 8 or 16 bit) and headerless
//! little-endian u16 grids. A JSON sidecar at `<file>.json` gives
//! `{"height", "width", "ignore"}`; it is required for raw grids and optional
//! for PGM, whose header already carries the size.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::MetricsError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ignore: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    pub height: usize,
    pub width: usize,
    pub labels: Vec<u32>,
    /// Label value excluded from every metric.
    pub ignore: Option<u32>,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

impl GroundTruth {
    pub fn new(
        height: usize,
        width: usize,
        labels: Vec<u32>,
        ignore: Option<u32>,
    ) -> Result<Self, MetricsError> {
        if height * width != labels.len() {
            return Err(MetricsError::ShapeMismatch {
                expected: height * width,
                found: labels.len(),
            });
        }
        Ok(Self {
            height,
            width,
            labels,
            ignore,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_valid(&self, i: usize) -> bool {
        Some(self.labels[i]) != self.ignore
    }

    pub fn valid_count(&self) -> usize {
        (0..self.len()).filter(|&i| self.is_valid(i)).count()
    }

    /// Errors if a non-ignore label is not a leaf id.
    pub fn check_labels(&self, leaf_count: usize) -> Result<(), MetricsError> {
        match (0..self.len()).find(|&i| self.is_valid(i) && self.labels[i] as usize >= leaf_count) {
            Some(index) => Err(MetricsError::LabelOutOfRange {
                index,
                label: self.labels[index],
                leaf_count,
            }),
            None => Ok(()),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MetricsError> {
        let path = path.as_ref();
        let bytes = fs::read(path)?;
        let side_path = sidecar_path(path);
        let sidecar: Option<Sidecar> = if side_path.exists() {
            let text = fs::read_to_string(&side_path)?;
            Some(
                serde_json::from_str(&text)
                    .map_err(|e| MetricsError::Format(format!("sidecar: {e}")))?,
            )
        } else {
            None
        };
        let ignore = sidecar.as_ref().and_then(|s| s.ignore);
        if bytes.starts_with(b"P5") {
            let (height, width, labels) = parse_pgm(&bytes)?;
            if let Some(s) = &sidecar {
                if s.height.is_some_and(|h| h != height) || s.width.is_some_and(|w| w != width) {
                    return Err(MetricsError::Format(
                        "sidecar size disagrees with PGM header".into(),
                    ));
                }
            }
            return Self::new(height, width, labels, ignore);
        }
        let (height, width) = match sidecar {
            Some(Sidecar {
                height: Some(h),
                width: Some(w),
                ..
            }) => (h, w),
            _ => {
                return Err(MetricsError::Format(format!(
                    "raw grid needs a sidecar with height and width at {}",
                    side_path.display()
                )))
            }
        };
        if bytes.len() != 2 * height * width {
            return Err(MetricsError::ShapeMismatch {
                expected: height * width,
                found: bytes.len() / 2,
            });
        }
        let labels = bytes
            .chunks_exact(2)
            .map(|b| u16::from_le_bytes([b[0], b[1]]) as u32)
            .collect();
        Self::new(height, width, labels, ignore)
    }

    /// Writes a raw u16 grid plus its sidecar.
    pub fn save_raw(&self, path: impl AsRef<Path>) -> Result<(), MetricsError> {
        let path = path.as_ref();
        let mut bytes = Vec::with_capacity(self.len() * 2);
        for &l in &self.labels {
            let l = u16::try_from(l)
                .map_err(|_| MetricsError::Format(format!("label {l} exceeds u16")))?;
            bytes.extend_from_slice(&l.to_le_bytes());
        }
        fs::write(path, bytes)?;
        let side = Sidecar {
            height: Some(self.height),
            width: Some(self.width),
            ignore: self.ignore,
        };
        fs::write(
            sidecar_path(path),
            serde_json::to_string(&side).expect("sidecar serializes"),
        )?;
        Ok(())
    }
}

fn parse_pgm(bytes: &[u8]) -> Result<(usize, usize, Vec<u32>), MetricsError> {
    let bad = |m: &str| MetricsError::Format(format!("PGM: {m}"));
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in &mut fields {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                break;
            }
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("bad header"))?;
    }
    // exactly one whitespace byte separates the header from the raster
    pos += 1;
    let [width, height, maxval] = fields;
    if maxval == 0 || maxval > 65535 {
        return Err(bad("maxval out of range"));
    }
    let raster = bytes.get(pos..).ok_or_else(|| bad("missing raster"))?;
    let n = width * height;
    let labels = if maxval < 256 {
        if raster.len() < n {
            return Err(bad("raster truncated"));
        }
        raster[..n].iter().map(|&b| b as u32).collect()
    } else {
        if raster.len() < 2 * n {
            return Err(bad("raster truncated"));
        }
        raster[..2 * n]
            .chunks_exact(2)
            .map(|b| u16::from_be_bytes([b[0], b[1]]) as u32)
            .collect()
    };
    Ok((height, width, labels))
}
