//! Simple undirected graphs with a fixed edge coordinate system.
//!
//! Vertices are `0..n`. Edges are stored as `(u, v)` with `u < v`, sorted
//! lexicographically, and every other module addresses an edge by its
//! position in that list.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Vertex = usize;
pub type EdgeIdx = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge index {edge} out of range for a graph with {m} edges")]
    EdgeOutOfRange { edge: EdgeIdx, m: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs may be given in either
    /// orientation; loops, repeated pairs and out-of-range endpoints are
    /// rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_edges(n, list))
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Self::from_sorted_edges(n, Vec::new())
    }

    fn from_sorted_edges(n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIdx) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// δ(G); `None` for the graph with no vertices.
    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<EdgeIdx> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Edge indices incident to `v`, in neighbor order.
    pub fn incident_edges(&self, v: Vertex) -> impl Iterator<Item = EdgeIdx> + '_ {
        self.adj[v]
            .iter()
            .map(move |&u| self.edge_index(u, v).expect("adjacency is symmetric closure of edges"))
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || connected_components(self).len() == 1
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    ///
    /// # Panics
    /// If `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut seen = vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling preserves simplicity")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, edges).expect("disjoint union of simple graphs is simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Length of a shortest cycle; forests have infinite girth.
///
/// `Finite(_) < Infinite`, so `girth >= Girth::Finite(5)` holds for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_at_least(self, k: usize) -> bool {
        self >= Girth::Finite(k)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

// JSON form: an integer, or the string "infinite".
impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Girth {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(g) if g >= 3 => Ok(Girth::Finite(g as usize)),
            Repr::Str(s) if s == "infinite" => Ok(Girth::Infinite),
            _ => Err(serde::de::Error::custom("girth must be an integer >= 3 or \"infinite\"")),
        }
    }
}

/// Shortest cycle length by breadth-first search from every vertex.
///
/// From root `r`, a non-tree edge `xy` closes a closed walk of length
/// `d(x) + d(y) + 1` through `r`; the minimum over all roots is the girth.
pub fn girth(g: &Graph) -> Girth {
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            // nothing shorter can be found below this depth
            if 2 * dist[x] >= best {
                break;
            }
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Leaves (degree exactly one) and stems (vertices with a leaf neighbor).
///
/// Both endpoints of a `K₁,₁` component appear in both lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    pub leaves: Vec<Vertex>,
    pub stems: Vec<Vertex>,
}

impl VertexClass {
    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.leaves.binary_search(&v).is_ok()
    }

    pub fn is_stem(&self, v: Vertex) -> bool {
        self.stems.binary_search(&v).is_ok()
    }

    pub fn is_leaf_or_stem(&self, v: Vertex) -> bool {
        self.is_leaf(v) || self.is_stem(v)
    }
}

pub fn classify_vertices(g: &Graph) -> VertexClass {
    let leaves: Vec<Vertex> = (0..g.order()).filter(|&v| g.degree(v) == 1).collect();
    let mut stems: Vec<Vertex> = leaves.iter().map(|&l| g.neighbors(l)[0]).collect();
    stems.sort_unstable();
    stems.dedup();
    VertexClass { leaves, stems }
}

/// Vertex sets of the connected components, each sorted, ordered by their
/// smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A subgraph together with the maps between its vertex numbering and the
/// parent graph's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Vertex>,
}

impl InducedSubgraph {
    /// Parent-graph edge index of edge `e` of the subgraph.
    pub fn parent_edge(&self, parent: &Graph, e: EdgeIdx) -> EdgeIdx {
        let (u, v) = self.graph.edge(e);
        parent
            .edge_index(self.new_to_old[u], self.new_to_old[v])
            .expect("subgraph edges exist in the parent")
    }
}

/// G[keep]; surviving vertices keep their relative order.
pub fn induced_subgraph(g: &Graph, keep: &[Vertex]) -> Result<InducedSubgraph, GraphError> {
    let mut mask = vec![false; g.order()];
    for &v in keep {
        if v >= g.order() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: g.order() });
        }
        mask[v] = true;
    }
    Ok(restrict(g, &mask))
}

/// G − S: deletes `vertices` and their incident edges, renumbering the rest.
pub fn induced_delete(g: &Graph, vertices: &[Vertex]) -> Result<InducedSubgraph, GraphError> {
    let mut mask = vec![true; g.order()];
    for &v in vertices {
        if v >= g.order() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: g.order() });
        }
        mask[v] = false;
    }
    Ok(restrict(g, &mask))
}

fn restrict(g: &Graph, keep: &[bool]) -> InducedSubgraph {
    let mut old_to_new = vec![None; g.order()];
    let mut new_to_old = Vec::new();
    for v in 0..g.order() {
        if keep[v] {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
    }
    // relabeling is monotone, so the filtered edge list stays sorted
    let edges = g
        .edges()
        .iter()
        .filter_map(|&(u, v)| Some((old_to_new[u]?, old_to_new[v]?)))
        .collect();
    InducedSubgraph {
        graph: Graph::from_sorted_edges(new_to_old.len(), edges),
        old_to_new,
        new_to_old,
    }
}

/// G − E′; vertex indices are preserved, edges are re-indexed.
pub fn delete_edges(g: &Graph, edge_idxs: &[EdgeIdx]) -> Result<Graph, GraphError> {
    let mut drop = vec![false; g.size()];
    for &e in edge_idxs {
        if e >= g.size() {
            return Err(GraphError::EdgeOutOfRange { edge: e, m: g.size() });
        }
        drop[e] = true;
    }
    let edges = g
        .edges()
        .iter()
        .zip(&drop)
        .filter(|(_, &d)| !d)
        .map(|(&e, _)| e)
        .collect();
    Ok(Graph::from_sorted_edges(g.order(), edges))
}
