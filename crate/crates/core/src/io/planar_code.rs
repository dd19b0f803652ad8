use thiserror::Error;

use crate::plane::{EmbedError, PlaneGraph};

pub const HEADER: &[u8] = b">>planar_code<<";

/// `offset` is the byte position in the stream, `record` the 0-based graph index.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarCodeError {
    #[error("stream does not start with >>planar_code<<")]
    BadHeader,
    #[error("byte {offset}: record {record} is truncated")]
    Truncated { offset: usize, record: usize },
    #[error("byte {offset}: record {record} uses the 2-byte form, which is not supported")]
    Unsupported { offset: usize, record: usize },
    #[error("byte {offset}: record {record} names vertex {value} of {order}")]
    BadNeighbor {
        offset: usize,
        record: usize,
        value: u8,
        order: usize,
    },
    #[error("byte {offset}: record {record}: {source}")]
    Embedding {
        offset: usize,
        record: usize,
        source: EmbedError,
    },
    #[error("byte {offset}: record {record} is not a plane embedding (Euler characteristic {chi})")]
    NotPlane { offset: usize, record: usize, chi: i64 },
}

impl PlanarCodeError {
    /// Whether later records can still be read after this error.
    pub fn is_recoverable(&self) -> bool {
        matches!(
            self,
            PlanarCodeError::BadNeighbor { .. }
                | PlanarCodeError::Embedding { .. }
                | PlanarCodeError::NotPlane { .. }
        )
    }
}

/// Streaming decoder. After an unrecoverable error the iterator ends.
pub struct PlanarCodeReader<'a> {
    bytes: &'a [u8],
    pos: usize,
    record: usize,
    failed: bool,
}

impl<'a> PlanarCodeReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Result<Self, PlanarCodeError> {
        if !bytes.starts_with(HEADER) {
            return Err(PlanarCodeError::BadHeader);
        }
        Ok(PlanarCodeReader {
            bytes,
            pos: HEADER.len(),
            record: 0,
            failed: false,
        })
    }

    fn read_record(&mut self) -> Result<PlaneGraph, PlanarCodeError> {
        let offset = self.pos;
        let record = self.record;
        let n = self.bytes[offset] as usize;
        if n == 0 {
            return Err(PlanarCodeError::Unsupported { offset, record });
        }
        let mut pos = offset + 1;
        let mut rotation = Vec::with_capacity(n);
        let mut bad = None;
        for _ in 0..n {
            let mut rot = Vec::new();
            loop {
                let Some(&b) = self.bytes.get(pos) else {
                    return Err(PlanarCodeError::Truncated { offset, record });
                };
                pos += 1;
                if b == 0 {
                    break;
                }
                if b as usize > n {
                    bad.get_or_insert(PlanarCodeError::BadNeighbor {
                        offset: pos - 1,
                        record,
                        value: b,
                        order: n,
                    });
                } else {
                    rot.push(b as usize - 1);
                }
            }
            rotation.push(rot);
        }
        self.pos = pos;
        if let Some(e) = bad {
            return Err(e);
        }
        let p = PlaneGraph::new(rotation).map_err(|source| PlanarCodeError::Embedding {
            offset,
            record,
            source,
        })?;
        match p.check_euler() {
            Ok(true) => Ok(p),
            Ok(false) => Err(PlanarCodeError::NotPlane {
                offset,
                record,
                chi: p.euler_characteristic(),
            }),
            Err(source) => Err(PlanarCodeError::Embedding {
                offset,
                record,
                source,
            }),
        }
    }
}

impl Iterator for PlanarCodeReader<'_> {
    type Item = Result<PlaneGraph, PlanarCodeError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.pos >= self.bytes.len() {
            return None;
        }
        let r = self.read_record();
        self.record += 1;
        if matches!(&r, Err(e) if !e.is_recoverable()) {
            self.failed = true;
        }
        Some(r)
    }
}

/// Decodes a whole stream, stopping at the first error.
pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<PlaneGraph>, PlanarCodeError> {
    PlanarCodeReader::new(bytes)?.collect()
}

/// Encodes graphs with at most 255 vertices, header included.
pub fn encode_planar_code<'a>(graphs: impl IntoIterator<Item = &'a PlaneGraph>) -> Vec<u8> {
    let mut out = HEADER.to_vec();
    for p in graphs {
        let n = p.order();
        assert!((1..=255).contains(&n), "planar_code records hold 1..=255 vertices");
        out.push(n as u8);
        for rot in p.rotations() {
            out.extend(rot.iter().map(|&u| (u + 1) as u8));
            out.push(0);
        }
    }
    out
}
