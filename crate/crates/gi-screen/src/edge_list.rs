//! Plain-text edge lists for hand-authored fixtures.
//!
//! The format is one header line `n <count>` followed by one `a b` line per
//! edge, with 1-based vertex labels. Blank lines are skipped, duplicate
//! edges are idempotent, self-loops are rejected.

use thiserror::Error;

use crate::graph::Graph;

/// Edge lists are hand-authored fixtures; the cap keeps a malformed
/// header from requesting an enormous adjacency allocation.
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("missing 'n <count>' header line")]
    MissingHeader,
    #[error("line {0}: malformed header, expected 'n <count>'")]
    BadHeader(usize),
    #[error("line {0}: vertex count must be a positive integer")]
    BadCount(usize),
    #[error("line {0}: vertex count {1} exceeds the supported maximum {MAX_VERTICES}")]
    TooLarge(usize, usize),
    #[error("line {0}: expected 'a b' with two 1-based vertex labels")]
    BadEdge(usize),
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {0}: self-loop at vertex {1}")]
    SelfLoop(usize, usize),
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(EdgeListError::MissingHeader)?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("n") {
        return Err(EdgeListError::BadHeader(header_line));
    }
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .ok_or(EdgeListError::BadCount(header_line))?;
    if n > MAX_VERTICES {
        return Err(EdgeListError::TooLarge(header_line, n));
    }
    if parts.next().is_some() {
        return Err(EdgeListError::BadHeader(header_line));
    }

    let mut g = Graph::empty(n);
    for (line, content) in lines {
        let mut parts = content.split_whitespace();
        let a: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(EdgeListError::BadEdge(line))?;
        let b: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(EdgeListError::BadEdge(line))?;
        if parts.next().is_some() {
            return Err(EdgeListError::BadEdge(line));
        }
        for v in [a, b] {
            if v == 0 || v > n {
                return Err(EdgeListError::OutOfRange { line, vertex: v, n });
            }
        }
        if a == b {
            return Err(EdgeListError::SelfLoop(line, a));
        }
        g.add_edge(a - 1, b - 1).expect("range checked above");
    }
    Ok(g)
}
