//! graph6 encoding, as produced by `geng` and friends.
//!
//! A graph6 string is `N(n) R(x)` where `N(n)` is the vertex count and `R(x)`
//! packs the upper triangle `x(0,1), x(0,2), x(1,2), x(0,3), …` six bits per
//! byte, most significant bit first, each byte offset by 63.

use thiserror::Error;

use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at position {position} is outside 63..=126")]
    ByteOutOfRange { position: usize, byte: u8 },
    #[error("truncated graph6 string: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6 string has {extra} unexpected trailing bytes")]
    TrailingData { extra: usize },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Graph6Error>,
    },
}

fn sixbits(bytes: &[u8], offset: usize) -> Result<u8, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(Graph6Error::ByteOutOfRange { position: offset, byte: b }),
        None => Err(Graph6Error::Truncated { expected: offset + 1, found: bytes.len() }),
    }
}

/// Decodes `N(n)`; returns `(n, header length)`.
fn decode_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = sixbits(bytes, 0)?;
    if first < 63 {
        return Ok((first as usize, 1));
    }
    let (start, width) = if bytes.get(1) == Some(&126) { (2, 6) } else { (1, 3) };
    let mut n = 0usize;
    for k in 0..width {
        n = (n << 6) | sixbits(bytes, start + k)? as usize;
    }
    Ok((n, start + width))
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
        return;
    }
    let width = if n <= 258_047 {
        out.push(126);
        3
    } else {
        out.extend([126, 126]);
        6
    };
    for k in (0..width).rev() {
        out.push(((n >> (6 * k)) & 0x3f) as u8 + 63);
    }
}

/// Parses one graph6 string. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    if s.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let bytes = s.as_bytes();
    let (n, header) = decode_order(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let body = bits.div_ceil(6);
    let expected = header + body;
    if bytes.len() < expected {
        // report a bad byte before a short count
        for p in header..bytes.len() {
            sixbits(bytes, p)?;
        }
        return Err(Graph6Error::Truncated { expected, found: bytes.len() });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingData { extra: bytes.len() - expected });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = sixbits(bytes, header + k / 6)?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    // padding bytes past the last full group still have to be printable
    for p in header..expected {
        sixbits(bytes, p)?;
    }
    Ok(Graph::new(n, edges).expect("upper-triangle bits describe a simple graph"))
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let bits = n * n.saturating_sub(1) / 2;
    let mut body = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in g.edges() {
        // column-major position of (u, v), u < v
        let k = v * (v - 1) / 2 + u;
        body[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(body.into_iter().map(|b| b + 63));
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// One graph per non-blank line; lines starting with `#` are skipped.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, Graph6Error> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            parse_graph6(l).map_err(|e| Graph6Error::AtLine { line: i + 1, source: Box::new(e) })
        })
        .collect()
}
