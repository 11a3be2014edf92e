//! Shared fixtures and independent reference implementations for the
//! integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num::{BigRational, Zero};
use rand::Rng;
use starfactor_core::Graph;

pub type Q = BigRational;

/// Graph on named vertices, numbered by first appearance.
pub struct Named {
    pub graph: Graph,
    pub names: Vec<&'static str>,
}

impl Named {
    pub fn new(edges: &[(&'static str, &'static str)]) -> Named {
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut names = Vec::new();
        let mut id = |s: &'static str, names: &mut Vec<&'static str>| {
            *index.entry(s).or_insert_with(|| {
                names.push(s);
                names.len() - 1
            })
        };
        let pairs: Vec<(usize, usize)> =
            edges.iter().map(|&(a, b)| (id(a, &mut names), id(b, &mut names))).collect();
        let graph = Graph::new(names.len(), pairs).unwrap();
        Named { graph, names }
    }

    pub fn v(&self, name: &str) -> usize {
        self.names.iter().position(|&n| n == name).unwrap_or_else(|| panic!("no vertex {name}"))
    }

    pub fn e(&self, a: &str, b: &str) -> usize {
        self.graph.edge_index(self.v(a), self.v(b)).unwrap_or_else(|| panic!("no edge {a}-{b}"))
    }
}

/// Graphs drawn from the proof figures, with their expected membership.
pub struct Fixture {
    pub name: &'static str,
    pub graph: Named,
    pub member: bool,
}

const C5: [(&str, &str); 5] = [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v1")];

fn c5_plus(extra: &[(&'static str, &'static str)]) -> Named {
    let mut edges = C5.to_vec();
    edges.extend_from_slice(extra);
    Named::new(&edges)
}

pub fn figure_fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "tree_double_leaf_stem_then_path_of_four",
            graph: Named::new(&[
                ("v5", "l1"),
                ("v5", "l2"),
                ("v5", "v4"),
                ("v4", "v3"),
                ("v3", "v2"),
                ("v2", "v1"),
            ]),
            member: true,
        },
        Fixture {
            name: "tree_triple_leaf_stem_then_path_of_three",
            graph: Named::new(&[
                ("v5", "l1"),
                ("v5", "l2"),
                ("v5", "v1"),
                ("v5", "v4"),
                ("v4", "v3"),
                ("v3", "v2"),
            ]),
            member: true,
        },
        Fixture {
            name: "c5_with_ear_of_length_three",
            graph: c5_plus(&[("v5", "u"), ("u", "y"), ("y", "v2")]),
            member: false,
        },
        Fixture {
            name: "c5_with_two_ears_sharing_a_vertex",
            graph: c5_plus(&[("v5", "u"), ("u", "y1"), ("u", "y2"), ("y1", "v2"), ("y2", "v3")]),
            member: false,
        },
        Fixture {
            name: "c5_with_adjacent_stems",
            graph: c5_plus(&[
                ("v1", "w1"),
                ("w1", "a1"),
                ("w1", "a2"),
                ("w1", "a3"),
                ("v2", "w2"),
                ("w2", "b1"),
                ("w2", "b2"),
            ]),
            member: false,
        },
        Fixture {
            name: "c5_with_chordal_path_of_length_three",
            graph: c5_plus(&[("x", "v1"), ("y", "v3"), ("x", "y")]),
            member: false,
        },
        Fixture {
            name: "tree_core_single_edge",
            graph: Named::new(&[
                ("v1", "l1"),
                ("v1", "l2"),
                ("v1", "v6"),
                ("v1", "v2"),
                ("v2", "v3"),
                ("v3", "v4"),
                ("v4", "v5"),
            ]),
            member: true,
        },
        Fixture {
            name: "tree_core_single_vertex",
            graph: Named::new(&[("v1", "l1"), ("v1", "l2"), ("v1", "v2"), ("v2", "v3"), ("v3", "v4")]),
            member: true,
        },
        Fixture {
            name: "stem_on_path_end_core_vertex",
            graph: Named::new(&[("a", "b"), ("b", "c"), ("a", "s"), ("s", "l1"), ("s", "l2")]),
            member: true,
        },
        Fixture {
            name: "stem_on_path_end_core_edge",
            graph: Named::new(&[("a", "b"), ("b", "c"), ("c", "d"), ("a", "s"), ("s", "l1"), ("s", "l2")]),
            member: true,
        },
        Fixture {
            name: "core_star_center_with_extra_stem",
            graph: Named::new(&[
                ("c", "s"),
                ("s", "t1"),
                ("s", "t2"),
                ("c", "b1"),
                ("c", "b2"),
                ("c", "b3"),
                ("b1", "s1"),
                ("b2", "s2"),
                ("b3", "s3"),
                ("s1", "p1"),
                ("s1", "p2"),
                ("s2", "q1"),
                ("s2", "q2"),
                ("s3", "r1"),
                ("s3", "r2"),
                ("s3", "r3"),
            ]),
            member: false,
        },
    ]
}

/// 14-vertex graph of girth 5 whose core is three disjoint edges
/// `a = Q1Q2`, `b = AB`, `c = Q3Q4`; it has star-factors with 7 and with 10
/// edges.
pub fn three_core_edges_graph() -> Named {
    Named::new(&[
        ("A", "B"),
        ("A", "P1"),
        ("A", "P2"),
        ("P1", "L1"),
        ("P2", "L2"),
        ("P1", "Q1"),
        ("P2", "Q2"),
        ("Q1", "Q2"),
        ("B", "P3"),
        ("B", "P4"),
        ("P3", "L3"),
        ("P4", "L4"),
        ("P3", "Q3"),
        ("P4", "Q4"),
        ("Q3", "Q4"),
    ])
}

/// All star-factors as sorted edge-index lists, by filtering every edge
/// subset: a subset is a star-factor iff it covers every vertex and each
/// chosen edge has an endpoint of degree 1 in the subset.
pub fn brute_force_star_factors(g: &Graph) -> Vec<Vec<usize>> {
    let m = g.size();
    assert!(m <= 24, "brute force is exponential in the edge count");
    let n = g.order();
    let mut out = Vec::new();
    'subsets: for mask in 0u32..1 << m {
        let mut deg = vec![0usize; n];
        for e in 0..m {
            if mask >> e & 1 == 1 {
                let (u, v) = g.edge(e);
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        if n == 0 || deg.contains(&0) {
            continue;
        }
        for e in 0..m {
            if mask >> e & 1 == 1 {
                let (u, v) = g.edge(e);
                if deg[u] != 1 && deg[v] != 1 {
                    continue 'subsets;
                }
            }
        }
        out.push((0..m).filter(|&e| mask >> e & 1 == 1).collect());
    }
    out.sort();
    out
}

/// Every star-factor has the same total weight under `w` (all positive).
pub fn equalizes(g: &Graph, w: &[Q]) -> bool {
    if w.len() != g.size() || w.iter().any(|x| *x <= Q::zero()) {
        return false;
    }
    let totals: Vec<Q> = brute_force_star_factors(g)
        .iter()
        .map(|f| f.iter().map(|&e| w[e].clone()).sum())
        .collect();
    totals.windows(2).all(|p| p[0] == p[1])
}

/// Girth via "shortest cycle through each edge": delete the edge and take
/// the distance between its endpoints.
pub fn girth_by_edge_deletion(g: &Graph) -> Option<usize> {
    let n = g.order();
    let mut best: Option<usize> = None;
    for &(s, t) in g.edges() {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if (x == s && y == t) || (x == t && y == s) {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[t] != usize::MAX {
            let len = dist[t] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
    }
    best
}

/// Tree from a Prüfer sequence over `0..seq.len() + 2`.
pub fn prufer_tree(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).unwrap()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 2);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_tree(&seq)
}

/// Tree membership restated from scratch: after deleting leaves and stems,
/// every remaining component is a single vertex, a single edge, or a star
/// `K₁,ₘ` (`m ≥ 2`) whose center has degree `m` in the tree.
pub fn tree_restatement(t: &Graph) -> bool {
    let n = t.order();
    let leaf: Vec<bool> = (0..n).map(|v| t.degree(v) == 1).collect();
    let stem: Vec<bool> = (0..n).map(|v| t.neighbors(v).iter().any(|&w| leaf[w])).collect();
    let core: Vec<bool> = (0..n).map(|v| !leaf[v] && !stem[v]).collect();
    let mut seen = vec![false; n];
    for s in 0..n {
        if !core[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &w in t.neighbors(v) {
                if core[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let core_deg = |v: usize| t.neighbors(v).iter().filter(|&&w| core[w]).count();
        let k = comp.len();
        if k <= 2 {
            continue;
        }
        // a tree component on k vertices is a star iff some vertex touches all others
        match comp.iter().find(|&&v| core_deg(v) == k - 1) {
            Some(&c) if t.degree(c) == k - 1 => {}
            _ => return false,
        }
    }
    true
}
