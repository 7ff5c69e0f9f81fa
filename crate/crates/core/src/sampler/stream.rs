//! `HCS1` sample streams.
//!
//! Little-endian layout:
//!
//! ```text
//! magic        4 bytes  "HCS1"
//! kind         u8       0 = labels, 1 = posteriors
//! components   u32      N
//! classes      u32      |Y|
//! frames       u32
//! seed         u64      producer seed (informational)
//! frames...    labels: N x u16; posteriors: N x |Y| x f32
//! ```
//!
//! A frame is one joint model evaluation over all pixels. Frames are consumed
//! strictly in order and never reused.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use super::synthetic::hex_digest;
use super::{Capabilities, SampleError, SampleSource, POSTERIOR_TOLERANCE};

pub const MAGIC: &[u8; 4] = b"HCS1";
pub const HEADER_LEN: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum StreamKind {
    Labels = 0,
    Posteriors = 1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamHeader {
    pub kind: StreamKind,
    pub components: u32,
    pub classes: u32,
    pub frames: u32,
    pub producer_seed: u64,
}

impl StreamHeader {
    pub fn encode(&self) -> [u8; HEADER_LEN] {
        let mut buf = [0u8; HEADER_LEN];
        buf[..4].copy_from_slice(MAGIC);
        buf[4] = self.kind as u8;
        buf[5..9].copy_from_slice(&self.components.to_le_bytes());
        buf[9..13].copy_from_slice(&self.classes.to_le_bytes());
        buf[13..17].copy_from_slice(&self.frames.to_le_bytes());
        buf[17..25].copy_from_slice(&self.producer_seed.to_le_bytes());
        buf
    }

    pub fn decode(buf: &[u8]) -> Result<Self, SampleError> {
        if buf.len() < HEADER_LEN {
            return Err(SampleError::BadMagic(format!(
                "header truncated at {} of {HEADER_LEN} bytes",
                buf.len()
            )));
        }
        if &buf[..4] != MAGIC {
            return Err(SampleError::BadMagic(format!("found {:02x?}", &buf[..4])));
        }
        let kind = match buf[4] {
            0 => StreamKind::Labels,
            1 => StreamKind::Posteriors,
            other => return Err(SampleError::UnknownKind(other)),
        };
        let u32_at = |o: usize| u32::from_le_bytes(buf[o..o + 4].try_into().unwrap());
        let header = Self {
            kind,
            components: u32_at(5),
            classes: u32_at(9),
            frames: u32_at(13),
            producer_seed: u64::from_le_bytes(buf[17..25].try_into().unwrap()),
        };
        if header.components == 0 || header.classes == 0 {
            return Err(SampleError::HeaderMismatch(format!(
                "stream declares N={} and |Y|={}",
                header.components, header.classes
            )));
        }
        if kind == StreamKind::Labels && header.classes > u32::from(u16::MAX) + 1 {
            return Err(SampleError::HeaderMismatch(format!(
                "{} classes do not fit u16 labels",
                header.classes
            )));
        }
        Ok(header)
    }

    pub fn frame_bytes(&self) -> usize {
        match self.kind {
            StreamKind::Labels => self.components as usize * 2,
            StreamKind::Posteriors => self.components as usize * self.classes as usize * 4,
        }
    }
}

/// Reads the header, mapping any short read to `BadMagic`.
pub fn read_header(reader: &mut impl Read) -> Result<StreamHeader, SampleError> {
    let mut buf = [0u8; HEADER_LEN];
    let mut filled = 0;
    while filled < HEADER_LEN {
        match reader.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(k) => filled += k,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e.into()),
        }
    }
    StreamHeader::decode(&buf[..filled])
}

/// A sample source backed by any `HCS1` byte stream.
pub struct StreamSource<R> {
    reader: R,
    header: StreamHeader,
    consumed: u32,
    frame: Vec<u8>,
    posterior_scratch: Vec<f64>,
    fingerprint: String,
}

impl StreamSource<BufReader<File>> {
    /// Opens a stream file. The fingerprint is the SHA-256 of its bytes.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, SampleError> {
        let path = path.as_ref();
        let mut hasher = Sha256::new();
        let mut file = File::open(path)?;
        let mut chunk = vec![0u8; 1 << 16];
        loop {
            let k = file.read(&mut chunk)?;
            if k == 0 {
                break;
            }
            hasher.update(&chunk[..k]);
        }
        let fingerprint = format!("hcs1:{}", hex_digest(hasher));
        let reader = BufReader::new(File::open(path)?);
        Self::from_reader(reader, fingerprint)
    }
}

impl<R: Read> StreamSource<R> {
    pub fn from_reader(mut reader: R, fingerprint: String) -> Result<Self, SampleError> {
        let header = read_header(&mut reader)?;
        Ok(Self::with_header(reader, header, fingerprint))
    }

    pub(crate) fn with_header(reader: R, header: StreamHeader, fingerprint: String) -> Self {
        Self {
            reader,
            header,
            consumed: 0,
            frame: vec![0u8; header.frame_bytes()],
            posterior_scratch: Vec::new(),
            fingerprint,
        }
    }

    pub fn header(&self) -> &StreamHeader {
        &self.header
    }

    fn read_frame(&mut self) -> Result<(), SampleError> {
        if self.consumed >= self.header.frames {
            return Err(SampleError::InsufficientSamples {
                requested: u64::from(self.consumed) + 1,
                available: u64::from(self.header.frames),
            });
        }
        self.reader
            .read_exact(&mut self.frame)
            .map_err(|e| match e.kind() {
                io::ErrorKind::UnexpectedEof => SampleError::TruncatedFrame(self.consumed),
                _ => SampleError::Io(e),
            })?;
        self.consumed += 1;
        Ok(())
    }

    fn decode_posteriors(&self, out: &mut [f64]) -> Result<(), SampleError> {
        let k = self.header.classes as usize;
        for (slot, bytes) in out.iter_mut().zip(self.frame.chunks_exact(4)) {
            *slot = f64::from(f32::from_le_bytes(bytes.try_into().unwrap()));
        }
        for (i, row) in out.chunks_exact(k).enumerate() {
            let total: f64 = row.iter().sum();
            if row.iter().any(|p| !(*p >= 0.0)) || (total - 1.0).abs() > POSTERIOR_TOLERANCE {
                return Err(SampleError::InvalidPosterior {
                    component: i,
                    reason: format!("frame {} row sums to {total}", self.consumed - 1),
                });
            }
        }
        Ok(())
    }
}

impl<R: Read> SampleSource for StreamSource<R> {
    fn component_count(&self) -> usize {
        self.header.components as usize
    }

    fn class_count(&self) -> usize {
        self.header.classes as usize
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            labels: true,
            posteriors: self.header.kind == StreamKind::Posteriors,
        }
    }

    fn remaining_frames(&self) -> Option<u64> {
        Some(u64::from(self.header.frames - self.consumed))
    }

    fn next_posteriors(&mut self, out: &mut [f64]) -> Result<(), SampleError> {
        if self.header.kind != StreamKind::Posteriors {
            return Err(SampleError::UnsupportedCapability("posteriors"));
        }
        self.read_frame()?;
        self.decode_posteriors(out)
    }

    /// Label frames are read as-is; posterior frames are reduced to their
    /// arg-max class (lowest id on ties).
    fn next_labels(&mut self, out: &mut [u32]) -> Result<(), SampleError> {
        self.read_frame()?;
        let k = self.header.classes as usize;
        match self.header.kind {
            StreamKind::Labels => {
                for (i, (slot, bytes)) in out.iter_mut().zip(self.frame.chunks_exact(2)).enumerate()
                {
                    let label = u32::from(u16::from_le_bytes([bytes[0], bytes[1]]));
                    if label as usize >= k {
                        return Err(SampleError::LabelOutOfRange {
                            component: i,
                            label,
                            class_count: k,
                        });
                    }
                    *slot = label;
                }
            }
            StreamKind::Posteriors => {
                let mut scratch = std::mem::take(&mut self.posterior_scratch);
                scratch.resize(self.frame.len() / 4, 0.0);
                let decoded = self.decode_posteriors(&mut scratch);
                if decoded.is_ok() {
                    for (slot, row) in out.iter_mut().zip(scratch.chunks_exact(k)) {
                        let mut best = 0;
                        for (c, &p) in row.iter().enumerate() {
                            if p > row[best] {
                                best = c;
                            }
                        }
                        *slot = best as u32;
                    }
                }
                self.posterior_scratch = scratch;
                decoded?;
            }
        }
        Ok(())
    }

    fn fingerprint(&self) -> String {
        self.fingerprint.clone()
    }
}

/// Writes an `HCS1` stream, checking the declared frame count on `finish`.
pub struct StreamWriter<W: Write> {
    writer: BufWriter<W>,
    header: StreamHeader,
    written: u32,
}

impl<W: Write> StreamWriter<W> {
    pub fn new(writer: W, header: StreamHeader) -> io::Result<Self> {
        let mut writer = BufWriter::new(writer);
        writer.write_all(&header.encode())?;
        Ok(Self {
            writer,
            header,
            written: 0,
        })
    }

    pub fn write_labels(&mut self, labels: &[u16]) -> io::Result<()> {
        assert_eq!(self.header.kind, StreamKind::Labels);
        assert_eq!(labels.len(), self.header.components as usize);
        for l in labels {
            self.writer.write_all(&l.to_le_bytes())?;
        }
        self.written += 1;
        Ok(())
    }

    pub fn write_posteriors(&mut self, posteriors: &[f32]) -> io::Result<()> {
        assert_eq!(self.header.kind, StreamKind::Posteriors);
        assert_eq!(
            posteriors.len(),
            self.header.components as usize * self.header.classes as usize
        );
        for p in posteriors {
            self.writer.write_all(&p.to_le_bytes())?;
        }
        self.written += 1;
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<W> {
        if self.written != self.header.frames {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                format!(
                    "wrote {} frames, header declares {}",
                    self.written, self.header.frames
                ),
            ));
        }
        self.writer.flush()?;
        self.writer.into_inner().map_err(|e| e.into_error())
    }
}
