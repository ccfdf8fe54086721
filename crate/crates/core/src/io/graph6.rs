//! The basic graph6 format: a size prefix followed by the upper triangle of
//! the adjacency matrix, column by column, six bits per printable byte.

use super::FormatError;
use crate::graph::Graph;

const BIAS: u8 = 63;
const MAX_SHORT: usize = 62;
const MAX_MEDIUM: usize = 258_047;

pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let bad = |msg: &str| FormatError::MalformedGraph6(msg.to_string());
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(BIAS..=126).contains(&b)) {
        return Err(bad("byte outside the printable graph6 range"));
    }
    let (n, body) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, ..] => return Err(bad("graphs above 258047 vertices are not supported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated size prefix"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - BIAS) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(bad("adjacency section has the wrong length"));
    }
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
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
    if (k..body.len() * 6).any(bit) {
        return Err(bad("nonzero padding bits"));
    }
    Ok(Graph::from_edges(n, &edges).expect("graph6 describes a simple graph"))
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    assert!(n <= MAX_MEDIUM, "graph too large for graph6");
    let mut out = Vec::new();
    if n <= MAX_SHORT {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + BIAS));
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut b = 0u8;
        for (pos, &set) in chunk.iter().enumerate() {
            if set {
                b |= 1 << (5 - pos);
            }
        }
        out.push(b + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
