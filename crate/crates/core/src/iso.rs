//! Small-graph isomorphism: colour refinement plus backtracking.
//!
//! Meant for graphs of a dozen or so vertices (fixture dedup, census list
//! generation), not as a general-purpose canonical labeller.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("brute-force canonical form supports at most {CANONICAL_MAX_ORDER} vertices, got {0}")]
pub struct TooLarge(pub usize);

/// Stable colour refinement, run on the disjoint union so that colours of
/// `g` and `h` are comparable. Returns `(colours of g, colours of h)`.
fn joint_colours(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let u = g.disjoint_union(h);
    let n = u.order();
    let mut colour: Vec<usize> = (0..n).map(|v| u.degree(v)).collect();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = u.neighbors(v).iter().map(|&w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut ids: BTreeMap<&(usize, Vec<usize>), usize> = sigs.iter().map(|s| (s, 0)).collect();
        for (i, id) in ids.values_mut().enumerate() {
            *id = i;
        }
        let next: Vec<usize> = sigs.iter().map(|s| ids[s]).collect();
        let count = ids.len();
        colour = next;
        if count == classes {
            break;
        }
        classes = count;
    }
    let hc = colour.split_off(g.order());
    (colour, hc)
}

/// Vertices of `g` ordered so each one after the first of its component
/// has an earlier neighbour, rarest colours first.
fn search_order(g: &Graph, colour: &[usize]) -> Vec<Vertex> {
    let mut freq: HashMap<usize, usize> = HashMap::new();
    for &c in colour {
        *freq.entry(c).or_default() += 1;
    }
    let n = g.order();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let pick = |cands: &mut dyn Iterator<Item = Vertex>| cands.min_by_key(|&v| (freq[&colour[v]], v));
        let frontier = (0..n).filter(|&v| !placed[v] && g.neighbors(v).iter().any(|&w| placed[w]));
        let v = pick(&mut frontier.into_iter())
            .or_else(|| pick(&mut (0..n).filter(|&v| !placed[v])))
            .expect("unplaced vertex exists");
        placed[v] = true;
        order.push(v);
    }
    order
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    gc: Vec<usize>,
    hc: Vec<usize>,
    order: Vec<Vertex>,
    map: Vec<Option<Vertex>>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn consistent(&self, v: Vertex, w: Vertex) -> bool {
        self.g.neighbors(v).iter().all(|&x| match self.map[x] {
            Some(y) => self.h.has_edge(w, y),
            None => true,
        }) && self.h.neighbors(w).iter().filter(|&&y| self.used[y]).count()
            == self.g.neighbors(v).iter().filter(|&&x| self.map[x].is_some()).count()
    }

    /// Counts complete maps, stopping once `limit` are found.
    fn search(&mut self, depth: usize, limit: u64) -> u64 {
        if depth == self.order.len() {
            return 1;
        }
        let v = self.order[depth];
        let mut found = 0;
        for w in 0..self.h.order() {
            if self.used[w] || self.hc[w] != self.gc[v] || !self.consistent(v, w) {
                continue;
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            found += self.search(depth + 1, limit - found);
            self.map[v] = None;
            self.used[w] = false;
            if found >= limit {
                break;
            }
        }
        found
    }
}

fn matcher<'a>(g: &'a Graph, h: &'a Graph) -> Option<Matcher<'a>> {
    if g.order() != h.order() || g.size() != h.size() {
        return None;
    }
    let (gc, hc) = joint_colours(g, h);
    let mut a = gc.clone();
    let mut b = hc.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let order = search_order(g, &gc);
    Some(Matcher { g, h, gc, hc, order, map: vec![None; g.order()], used: vec![false; h.order()] })
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    matcher(g, h).is_some_and(|mut m| m.search(0, 1) == 1)
}

/// `|Aut(g)|`.
pub fn automorphism_count(g: &Graph) -> u64 {
    matcher(g, g).expect("g matches itself").search(0, u64::MAX)
}

/// Isomorphism-invariant fingerprint: order, size, sorted degree sequence
/// and sorted refined colour histogram.
pub fn invariant(g: &Graph) -> Vec<usize> {
    let (c, _) = joint_colours(g, &Graph::empty(0));
    let mut degrees: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    // colour ids depend only on g here, so the histogram is invariant
    let mut hist = vec![0usize; g.order()];
    for &x in &c {
        hist[x] += 1;
    }
    let mut out = vec![g.order(), g.size()];
    out.extend(degrees);
    out.extend(hist);
    out
}

/// Lexicographically largest upper-triangle adjacency string over all
/// relabelings, as a graph. Exhaustive over `n!` permutations.
pub fn canonical_form(g: &Graph) -> Result<Graph, TooLarge> {
    let n = g.order();
    if n > CANONICAL_MAX_ORDER {
        return Err(TooLarge(n));
    }
    let code = |perm: &[usize]| -> u64 {
        // bit for pair (i, j), i < j, in row-major order
        let mut bits = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                bits <<= 1;
                if g.has_edge(perm[i], perm[j]) {
                    bits |= 1;
                }
            }
        }
        bits
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = (code(&perm), perm.clone());
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let k = code(&perm);
            if k > best.0 {
                best = (k, perm.clone());
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    // perm maps new position -> old vertex; relabel wants old -> new
    let mut inverse = vec![0; n];
    for (new, &old) in best.1.iter().enumerate() {
        inverse[old] = new;
    }
    Ok(g.relabel(&inverse))
}
