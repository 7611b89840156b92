//! graph6 encoding and decoding (short form, n ≤ 62).
//!
//! The format packs the upper triangle of the adjacency matrix column-wise
//! into 6-bit groups, each stored as a printable byte in 63..=126. The
//! header byte is 63+n; the long form (header `~`, n ≥ 63) is not
//! supported here. Padding bits beyond the n(n−1)/2 payload are ignored on
//! decode and written as zeros on encode.

use thiserror::Error;

use crate::graph::Graph;

pub const MAX_N: usize = 62;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("long-form graph6 header (n >= 63) at byte 0 is not supported")]
    LongForm,
    #[error("invalid graph6 byte {byte:#04x} at offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated payload: expected {expected} payload bytes, input ends at offset {offset}")]
    Truncated { expected: usize, offset: usize },
    #[error("trailing garbage starting at byte offset {offset}")]
    TrailingGarbage { offset: usize },
}

fn payload_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Decodes one line of short-form graph6 text. A single trailing newline
/// is tolerated; anything else past the payload is an error.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let mut bytes = text.as_bytes();
    if bytes.ends_with(b"\n") {
        bytes = &bytes[..bytes.len() - 1];
    }
    if bytes.ends_with(b"\r") {
        bytes = &bytes[..bytes.len() - 1];
    }
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let header = bytes[0];
    if header == 126 {
        return Err(Graph6Error::LongForm);
    }
    if !(63..=126).contains(&header) {
        return Err(Graph6Error::InvalidByte {
            offset: 0,
            byte: header,
        });
    }
    let n = (header - 63) as usize;
    if n == 0 {
        // 63 encodes the 0-vertex graph, which has no meaning here.
        return Err(Graph6Error::InvalidByte {
            offset: 0,
            byte: header,
        });
    }
    let expected = payload_len(n);
    if bytes.len() < 1 + expected {
        return Err(Graph6Error::Truncated {
            expected,
            offset: bytes.len(),
        });
    }
    if bytes.len() > 1 + expected {
        return Err(Graph6Error::TrailingGarbage {
            offset: 1 + expected,
        });
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for (idx, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte {
                offset: 1 + idx,
                byte: b,
            });
        }
        let group = b - 63;
        for k in 0..6 {
            if group & (1 << (5 - k)) != 0 {
                if let Some((i, j)) = triangle_index(n, bit + k) {
                    g.add_edge(i, j).expect("triangle index is a valid edge");
                }
                // set bits in the padding are ignored
            }
        }
        bit += 6;
    }
    Ok(g)
}

/// Upper-triangle position of bit `idx` in column-wise order:
/// (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), …
fn triangle_index(n: usize, idx: usize) -> Option<(usize, usize)> {
    if idx >= n * (n - 1) / 2 {
        return None;
    }
    let mut j = 1;
    let mut base = 0;
    while base + j <= idx {
        base += j;
        j += 1;
    }
    Some((idx - base, j))
}

/// Encodes a graph in canonical short-form graph6 (zero padding bits).
///
/// # Panics
/// Panics if the graph has more than 62 vertices.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_N, "short-form graph6 requires n <= {MAX_N}");
    let mut out = Vec::with_capacity(1 + payload_len(n));
    out.push(63 + n as u8);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.adj(i, j);
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (group << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}
