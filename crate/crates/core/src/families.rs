//! Named graph families used throughout the tests, benches and CLI examples.

use crate::graph::Graph;

/// Cycle `0-1-…-(n-1)-0`, `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Path `0-1-…-(n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// `K₁,ₘ` with center 0.
pub fn star(m: usize) -> Graph {
    Graph::new(m + 1, (1..=m).map(|i| (0, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Outer 5-cycle `0..5`, spokes `i – i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
}

/// Subdivided star: `legs` paths of `leg_len` edges hanging from center 0.
/// Leg `i` uses vertices `1 + i*leg_len ..= (i+1)*leg_len`, nearest first.
pub fn spider(legs: usize, leg_len: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..legs {
        let mut prev = 0;
        for j in 0..leg_len {
            let v = 1 + i * leg_len + j;
            edges.push((prev, v));
            prev = v;
        }
    }
    Graph::new(1 + legs * leg_len, edges).unwrap()
}

/// Attaches a pendant path of `len` new vertices at `at`.
pub fn with_pendant_path(g: &Graph, at: usize, len: usize) -> Graph {
    let n = g.order();
    let mut edges = g.edges().to_vec();
    let mut prev = at;
    for i in 0..len {
        edges.push((prev, n + i));
        prev = n + i;
    }
    Graph::new(n + len, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, Girth};

    #[test]
    fn family_sizes() {
        assert_eq!(cycle(7).size(), 7);
        assert_eq!(path(1).size(), 0);
        assert_eq!(star(4).degree(0), 4);
        assert_eq!(complete(5).size(), 10);
        let p = petersen();
        assert_eq!(p.size(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        let s = spider(3, 2);
        assert_eq!((s.order(), s.size()), (7, 6));
        assert_eq!(girth(&s), Girth::Infinite);
        let g = with_pendant_path(&cycle(5), 0, 2);
        assert_eq!(g.edges().last(), Some(&(5, 6)));
        assert!(g.has_edge(0, 5));
    }
}
