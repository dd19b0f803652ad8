use thiserror::Error;

use crate::graph::Graph;

/// Offsets count bytes from the start of the line, after any `>>graph6<<` prefix.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {offset}: {byte:#04x} is not a graph6 character")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: malformed length header")]
    BadHeader { offset: usize },
    #[error("expected {expected} edge bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("byte {offset}: trailing data after the edge bits")]
    TrailingGarbage { offset: usize },
    #[error("byte {offset}: padding bits are not zero")]
    NonzeroPadding { offset: usize },
}

const HEADER: &[u8] = b">>graph6<<";

pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let mut bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if let Some(rest) = bytes.strip_prefix(HEADER) {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { offset, byte });
        }
    }
    let (n, start) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Graph6Error::BadHeader { offset: 1 });
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n < 63 {
            return Err(Graph6Error::BadHeader { offset: 1 });
        }
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: data.len(),
        });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingGarbage {
            offset: start + expected,
        });
    }
    let pad = expected * 6 - bits;
    if pad > 0 && ((data[expected - 1] - 63) & ((1 << pad) - 1)) != 0 {
        return Err(Graph6Error::NonzeroPadding {
            offset: start + expected - 1,
        });
    }
    let bit = |k: usize| ((data[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges).expect("decoded edges are simple"))
}

/// graph6 encoding without header or newline.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(63 + n as u8);
    } else {
        assert!(n < 1 << 18, "graph6 orders above 2^18 - 1 are not supported");
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!((k3.order(), k3.size()), (3, 3));
        let k4 = parse_graph6("C~\n").unwrap();
        assert_eq!((k4.order(), k4.size()), (4, 6));
        let k1 = parse_graph6("@").unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        assert_eq!(parse_graph6(">>graph6<<Bw").unwrap(), k3);
        assert_eq!(encode_graph6(&k4), "C~");
        assert_eq!(encode_graph6(&Graph::empty(0)), "?");
    }

    #[test]
    fn long_header_roundtrip() {
        let n = 70;
        let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        let text = encode_graph6(&g);
        assert!(text.starts_with('~'));
        assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn malformed() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6("B"), Err(Graph6Error::Truncated { expected: 1, found: 0 }));
        assert_eq!(parse_graph6("Bww"), Err(Graph6Error::TrailingGarbage { offset: 2 }));
        // K3 needs 3 bits; setting a padding bit is rejected
        assert_eq!(parse_graph6("Bx"), Err(Graph6Error::NonzeroPadding { offset: 1 }));
        assert_eq!(parse_graph6("B w"), Err(Graph6Error::BadByte { offset: 1, byte: b' ' }));
        assert_eq!(parse_graph6("~~"), Err(Graph6Error::BadHeader { offset: 1 }));
    }
}
