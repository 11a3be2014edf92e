//! Plain-text edge lists.
//!
//! ```text
//! # C5
//! 5 5
//! 0 1
//! 1 2
//! ...
//! ```
//!
//! The first non-comment line is `n m`, followed by exactly `m` lines `u v`.
//! Lines starting with `#` and blank lines are ignored.

use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing \"n m\" header line")]
    MissingHeader,
    #[error("line {line}: expected two non-negative integers, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range 0..{n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {expected} edges but {found} were listed")]
    EdgeCountMismatch { expected: usize, found: usize },
}

fn pair(line: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let malformed = || ParseError::Malformed { line, text: text.to_string() };
    let mut it = text.split_whitespace();
    let a = it.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
    let b = it.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, htext) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = pair(hline, htext)?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for (line, text) in lines {
        let (u, v) = pair(line, text)?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::Loop { line, vertex: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch { expected: m, found: edges.len() });
    }
    Ok(Graph::new(n, edges).expect("edges validated above"))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
