//! Star-factor enumeration.
//!
//! A star is `K₁,ₙ` with `n >= 1`; a star-factor is a spanning subgraph whose
//! every component is a star. A graph has one iff it has no isolated vertex.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeIdx, Graph, Vertex};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("graph has an isolated vertex (or no vertices) and admits no star-factor")]
    Vacuous,
    #[error("more than {cap} star-factors")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarFactor {
    pub stars: Vec<Star>,
    /// Sorted edge indices.
    pub edges: Vec<EdgeIdx>,
}

impl StarFactor {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceVector {
    pub bits: Vec<bool>,
}

impl IncidenceVector {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

struct Enumerator<'a> {
    g: &'a Graph,
    cap: usize,
    covered: Vec<bool>,
    stars: Vec<Star>,
    out: Vec<StarFactor>,
}

impl Enumerator<'_> {
    fn emit(&mut self) -> Result<(), FactorError> {
        if self.out.len() == self.cap {
            return Err(FactorError::CapExceeded { cap: self.cap });
        }
        let mut edges: Vec<EdgeIdx> = self
            .stars
            .iter()
            .flat_map(|s| s.leaves.iter().map(|&l| self.g.edge_index(s.center, l).unwrap()))
            .collect();
        edges.sort_unstable();
        self.out.push(StarFactor { stars: self.stars.clone(), edges });
        Ok(())
    }

    fn uncovered_neighbors(&self, v: Vertex, except: Vertex) -> Vec<Vertex> {
        self.g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| u != except && !self.covered[u])
            .collect()
    }

    fn place(&mut self, center: Vertex, leaves: Vec<Vertex>, next: Vertex) -> Result<(), FactorError> {
        self.covered[center] = true;
        for &l in &leaves {
            self.covered[l] = true;
        }
        self.stars.push(Star { center, leaves });
        let r = self.search(next);
        let star = self.stars.pop().unwrap();
        self.covered[star.center] = false;
        for l in star.leaves {
            self.covered[l] = false;
        }
        r
    }

    /// Covers the lowest uncovered vertex `v` in every possible way.
    fn search(&mut self, from: Vertex) -> Result<(), FactorError> {
        let Some(v) = (from..self.g.order()).find(|&v| !self.covered[v]) else {
            return self.emit();
        };
        let free = self.uncovered_neighbors(v, v);
        // v as a center
        for mask in 1u64..(1u64 << free.len()) {
            let leaves = subset(&free, mask);
            self.place(v, leaves, v + 1)?;
        }
        // v as a leaf of u, with at least one co-leaf (a bare K₁,₁ was
        // produced above with the lower endpoint v as center)
        for &u in &free {
            let others = self.uncovered_neighbors(u, v);
            for mask in 1u64..(1u64 << others.len()) {
                let mut leaves = subset(&others, mask);
                leaves.push(v);
                leaves.sort_unstable();
                self.place(u, leaves, v + 1)?;
            }
        }
        Ok(())
    }
}

fn subset(items: &[Vertex], mask: u64) -> Vec<Vertex> {
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &x)| x)
        .collect()
}

/// All star-factors of `g`, ordered lexicographically by edge set.
pub fn enumerate_star_factors(g: &Graph, cap: usize) -> Result<Vec<StarFactor>, FactorError> {
    if g.order() == 0 || g.has_isolated_vertex() {
        return Err(FactorError::Vacuous);
    }
    assert!(
        (0..g.order()).all(|v| g.degree(v) < 64),
        "vertex degree too large for subset enumeration"
    );
    let mut e = Enumerator {
        g,
        cap,
        covered: vec![false; g.order()],
        stars: Vec::new(),
        out: Vec::new(),
    };
    e.search(0)?;
    let mut out = e.out;
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    out.dedup_by(|a, b| a.edges == b.edges);
    Ok(out)
}

pub fn incidence_vectors(factors: &[StarFactor], m: usize) -> Vec<IncidenceVector> {
    factors
        .iter()
        .map(|f| {
            let mut bits = vec![false; m];
            for &e in &f.edges {
                bits[e] = true;
            }
            IncidenceVector { bits }
        })
        .collect()
}

/// Multiset of star-factor sizes, as `edge count -> multiplicity`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCountSpectrum(pub BTreeMap<usize, usize>);

impl EdgeCountSpectrum {
    pub fn contains(&self, edges: usize) -> bool {
        self.0.contains_key(&edges)
    }

    /// Constant weights equalize all factors iff the support is one value.
    pub fn is_uniform(&self) -> bool {
        self.0.len() == 1
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// The multiset as a sorted list.
    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().flat_map(|(&k, &c)| std::iter::repeat_n(k, c)).collect()
    }
}

pub fn edge_count_spectrum(factors: &[StarFactor]) -> EdgeCountSpectrum {
    let mut counts = BTreeMap::new();
    for f in factors {
        *counts.entry(f.edge_count()).or_insert(0) += 1;
    }
    EdgeCountSpectrum(counts)
}

/// Re-checks a factor against its own structure: stars partition the
/// vertex set, every star edge exists, and `edges` is exactly their union.
pub fn check_star_factor(g: &Graph, f: &StarFactor) -> Result<(), String> {
    let mut owner = vec![None; g.order()];
    let mut edges = Vec::new();
    for (i, s) in f.stars.iter().enumerate() {
        if s.leaves.is_empty() {
            return Err(format!("star {i} has no leaves"));
        }
        for &v in std::iter::once(&s.center).chain(&s.leaves) {
            if v >= g.order() {
                return Err(format!("vertex {v} out of range"));
            }
            if let Some(j) = owner[v].replace(i) {
                return Err(format!("vertex {v} in stars {j} and {i}"));
            }
        }
        for &l in &s.leaves {
            let e = g
                .edge_index(s.center, l)
                .ok_or_else(|| format!("missing edge {}-{l}", s.center))?;
            edges.push(e);
        }
    }
    if let Some(v) = owner.iter().position(Option::is_none) {
        return Err(format!("vertex {v} not covered"));
    }
    edges.sort_unstable();
    if edges != f.edges {
        return Err("edge set does not match stars".into());
    }
    if f.edge_count() != g.order() - f.stars.len() {
        return Err("edge count is not n minus the number of stars".into());
    }
    Ok(())
}
