use std::fmt;
use std::io::Read;
use std::path::Path;

use oddchrom::io::{parse_graph6, Format, PlanarCodeReader};
use oddchrom::{Graph, PlaneGraph};

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl fmt::Display) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

pub type CmdResult = Result<u8, Failure>;

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// One decoded record. `plane` is set for planar_code input.
#[derive(Debug, Clone)]
pub struct Record {
    pub graph: Graph,
    pub plane: Option<PlaneGraph>,
}

/// A record that failed to decode; the stream may continue past it.
#[derive(Debug, Clone)]
pub struct BadRecord {
    pub message: String,
}

pub struct Stream {
    pub format: Format,
    /// Records in stream order, decoded or not.
    pub records: Vec<Result<Record, BadRecord>>,
    /// Set when decoding had to stop early.
    pub fatal: Option<String>,
}

pub fn read_stream(path: &Path) -> Result<Stream, Failure> {
    let bytes = read_bytes(path)?;
    let format = Format::detect(&bytes);
    let mut records = Vec::new();
    let mut fatal = None;
    match format {
        Format::PlanarCode => {
            let reader = PlanarCodeReader::new(&bytes).map_err(Failure::input)?;
            for r in reader {
                match r {
                    Ok(p) => records.push(Ok(Record {
                        graph: p.graph().clone(),
                        plane: Some(p),
                    })),
                    Err(e) if e.is_recoverable() => records.push(Err(BadRecord { message: e.to_string() })),
                    Err(e) => fatal = Some(e.to_string()),
                }
            }
        }
        Format::Graph6 => {
            let text = std::str::from_utf8(&bytes).map_err(|e| {
                Failure::input(format!("byte {}: graph6 input is not text", e.valid_up_to()))
            })?;
            let mut offset = 0;
            for (i, line) in text.split_inclusive('\n').enumerate() {
                let start = offset;
                offset += line.len();
                if line.trim().is_empty() {
                    continue;
                }
                records.push(match parse_graph6(line) {
                    Ok(graph) => Ok(Record { graph, plane: None }),
                    Err(e) => Err(BadRecord {
                        message: format!("line {} (byte {start}): {e}", i + 1),
                    }),
                });
            }
        }
    }
    Ok(Stream { format, records, fatal })
}

impl Stream {
    /// Every record, failing on the first one that did not decode.
    pub fn all(self) -> Result<Vec<Record>, Failure> {
        if let Some(e) = self.fatal {
            return Err(Failure::input(e));
        }
        let records: Vec<Record> = self
            .records
            .into_iter()
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::input(e.message))?;
        if records.is_empty() {
            return Err(Failure::input("input holds no graphs"));
        }
        Ok(records)
    }

    pub fn plane(self) -> Result<Vec<PlaneGraph>, Failure> {
        if self.format != Format::PlanarCode {
            return Err(Failure::input("this command needs a planar_code input (an embedding)"));
        }
        Ok(self.all()?.into_iter().map(|r| r.plane.expect("planar_code record")).collect())
    }
}
