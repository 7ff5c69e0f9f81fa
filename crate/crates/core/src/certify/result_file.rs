//! `HCR1` certification result files.
//!
//! ```text
//! magic      4 bytes  "HCR1"
//! N          u32
//! json_len   u32
//! header     json_len bytes of JSON (ResultHeader)
//! records    N x { u32 vertex (0xFFFFFFFF = abstain), u8 level, f32 p-value }
//! ```
//!
//! All integers little-endian.

use std::fs;
use std::path::Path;

use super::{CertifiedSegmentation, CertifyError, ResultHeader};

pub const RESULT_MAGIC: &[u8; 4] = b"HCR1";
pub const RECORD_LEN: usize = 9;

/// The per-component records only.
pub fn encode_payload(seg: &CertifiedSegmentation) -> Vec<u8> {
    let mut out = Vec::with_capacity(seg.len() * RECORD_LEN);
    for i in 0..seg.len() {
        out.extend_from_slice(&seg.vertices[i].to_le_bytes());
        out.push(seg.levels[i]);
        out.extend_from_slice(&(seg.p_values[i] as f32).to_le_bytes());
    }
    out
}

pub fn encode(seg: &CertifiedSegmentation) -> Vec<u8> {
    let header = serde_json::to_vec(&seg.header).expect("header serializes");
    let mut out = Vec::with_capacity(12 + header.len() + seg.len() * RECORD_LEN);
    out.extend_from_slice(RESULT_MAGIC);
    out.extend_from_slice(&(seg.len() as u32).to_le_bytes());
    out.extend_from_slice(&(header.len() as u32).to_le_bytes());
    out.extend_from_slice(&header);
    out.extend_from_slice(&encode_payload(seg));
    out
}

pub fn decode(bytes: &[u8]) -> Result<CertifiedSegmentation, CertifyError> {
    let bad = |m: String| CertifyError::BadResultFile(m);
    if bytes.len() < 12 || &bytes[..4] != RESULT_MAGIC {
        return Err(bad("missing HCR1 magic".into()));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let json_len = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let body = &bytes[12..];
    if body.len() != json_len + n * RECORD_LEN {
        return Err(bad(format!(
            "expected {} bytes after the prefix, found {}",
            json_len + n * RECORD_LEN,
            body.len()
        )));
    }
    let header: ResultHeader =
        serde_json::from_slice(&body[..json_len]).map_err(|e| bad(format!("header: {e}")))?;
    if header.components != n {
        return Err(bad(format!(
            "header says {} components, prefix says {n}",
            header.components
        )));
    }
    let mut vertices = Vec::with_capacity(n);
    let mut levels = Vec::with_capacity(n);
    let mut p_values = Vec::with_capacity(n);
    for rec in body[json_len..].chunks_exact(RECORD_LEN) {
        vertices.push(u32::from_le_bytes(rec[..4].try_into().unwrap()));
        levels.push(rec[4]);
        p_values.push(f32::from_le_bytes(rec[5..9].try_into().unwrap()) as f64);
    }
    Ok(CertifiedSegmentation {
        header,
        vertices,
        levels,
        p_values,
    })
}

pub fn write_result(
    path: impl AsRef<Path>,
    seg: &CertifiedSegmentation,
) -> Result<(), CertifyError> {
    fs::write(path, encode(seg))?;
    Ok(())
}

pub fn read_result(path: impl AsRef<Path>) -> Result<CertifiedSegmentation, CertifyError> {
    decode(&fs::read(path)?)
}
