//! graph6 encoding (the nauty/McKay text format for undirected graphs).
//!
//! Layout: a size header followed by the upper triangle of the adjacency
//! matrix, column by column (`(0,1), (0,2), (1,2), (0,3), ...`), packed into
//! 6-bit groups, each written as the byte `63 + group`.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

const BIAS: u8 = 63;
const SMALL_LIMIT: usize = 62;
const MEDIUM_LIMIT: usize = 258_047;
const LARGE_LIMIT: usize = (1 << 36) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 size header")]
    MalformedHeader,
    #[error("graph6 payload truncated: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("{0} unexpected bytes after the graph6 payload")]
    TrailingData(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= SMALL_LIMIT {
        out.push(BIAS + n as u8);
    } else if n <= MEDIUM_LIMIT {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(BIAS + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        assert!(n <= LARGE_LIMIT, "graph too large for graph6");
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(BIAS + ((n >> shift) & 0x3f) as u8);
        }
    }
}

/// Encodes `g` (ignoring any bipartition labels). No trailing newline.
pub fn encode_graph6(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.adjacency_row(j);
        for i in 0..j {
            group = (group << 1) | row.contains(i) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (group << (6 - filled)));
    }
    out
}

fn sextet(bytes: &[u8], offset: usize) -> Result<usize, Graph6Error> {
    let byte = bytes[offset];
    if !(BIAS..=BIAS + 63).contains(&byte) {
        return Err(Graph6Error::InvalidByte { offset, byte });
    }
    Ok((byte - BIAS) as usize)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let read = |from: usize, count: usize| -> Result<usize, Graph6Error> {
        if bytes.len() < from + count {
            return Err(Graph6Error::MalformedHeader);
        }
        (from..from + count).try_fold(0usize, |acc, i| Ok((acc << 6) | sextet(bytes, i)?))
    };
    match bytes {
        [] => Err(Graph6Error::MalformedHeader),
        [126, 126, ..] => Ok((read(2, 6)?, 8)),
        [126, ..] => Ok((read(1, 3)?, 4)),
        [b, ..] if (BIAS..=BIAS + SMALL_LIMIT as u8).contains(b) => Ok(((b - BIAS) as usize, 1)),
        _ => Err(Graph6Error::MalformedHeader),
    }
}

/// Decodes one graph6 string. Surrounding ASCII whitespace is ignored; an
/// optional `>>graph6<<` header is accepted.
pub fn decode_graph6(input: &[u8]) -> Result<Graph, Graph6Error> {
    let mut bytes = input.trim_ascii();
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
    }
    let (n, header_len) = decode_size(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let payload = &bytes[header_len..];
    if payload.len() < expected {
        return Err(Graph6Error::TruncatedPayload {
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingData(payload.len() - expected));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let group = sextet(payload, k / 6)?;
            if (group >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, &edges, None)?)
}
