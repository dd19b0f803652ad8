//! Interchange formats: graph6 text and plantri's planar_code.

pub mod graph6;
pub mod planar_code;

pub use graph6::{encode_graph6, parse_graph6, Graph6Error};
pub use planar_code::{encode_planar_code, parse_planar_code, PlanarCodeError, PlanarCodeReader};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    PlanarCode,
}

impl Format {
    /// planar_code streams announce themselves; anything else is read as graph6.
    pub fn detect(bytes: &[u8]) -> Format {
        if bytes.starts_with(b">>planar_code") {
            Format::PlanarCode
        } else {
            Format::Graph6
        }
    }
}
