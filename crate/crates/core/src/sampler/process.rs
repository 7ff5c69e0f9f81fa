//! External model processes.
//!
//! The engine spawns the command through `sh -c`, writes one JSON handshake
//! line to its stdin, closes stdin, and reads a single `HCS1` stream from its
//! stdout. The child is expected to emit the `n0` selection frames first and
//! the `n` test frames after them.

use std::io::{BufReader, Write};
use std::process::{Child, ChildStdout, Command, Stdio};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::stream::{read_header, StreamSource};
use super::synthetic::hex_digest;
use super::{Capabilities, SampleError, SampleSource};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Handshake {
    pub n: u64,
    pub n0: u64,
    pub sigma: f64,
    pub seed: u64,
    pub mode: String,
}

pub struct ProcessSource {
    child: Child,
    stream: StreamSource<BufReader<ChildStdout>>,
}

impl ProcessSource {
    pub fn spawn(command: &str, handshake: &Handshake) -> Result<Self, SampleError> {
        let fail = |what: String| SampleError::ProcessHandshakeFailure(what);
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| fail(format!("cannot start `{command}`: {e}")))?;

        let line = serde_json::to_string(handshake).expect("handshake serializes");
        {
            let mut stdin = child.stdin.take().expect("piped stdin");
            // a child that ignores its input may already have closed the pipe
            let _ = writeln!(stdin, "{line}");
        }
        let stdout = child.stdout.take().expect("piped stdout");
        let mut reader = BufReader::new(stdout);
        let header = match read_header(&mut reader) {
            Ok(h) => h,
            Err(e) => {
                let _ = child.kill();
                let _ = child.wait();
                return Err(fail(format!(
                    "`{command}` did not produce a stream header: {e}"
                )));
            }
        };

        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        hasher.update(line.as_bytes());
        let fingerprint = format!("process:{}", hex_digest(hasher));
        Ok(Self {
            child,
            stream: StreamSource::with_header(reader, header, fingerprint),
        })
    }
}

impl Drop for ProcessSource {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

impl SampleSource for ProcessSource {
    fn component_count(&self) -> usize {
        self.stream.component_count()
    }

    fn class_count(&self) -> usize {
        self.stream.class_count()
    }

    fn capabilities(&self) -> Capabilities {
        self.stream.capabilities()
    }

    fn remaining_frames(&self) -> Option<u64> {
        self.stream.remaining_frames()
    }

    fn next_posteriors(&mut self, out: &mut [f64]) -> Result<(), SampleError> {
        self.stream.next_posteriors(out)
    }

    fn next_labels(&mut self, out: &mut [u32]) -> Result<(), SampleError> {
        self.stream.next_labels(out)
    }

    fn fingerprint(&self) -> String {
        self.stream.fingerprint()
    }
}
