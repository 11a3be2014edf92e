//! Exhaustive cross-validation of the classifier against the oracle.
//!
//! Built-in enumeration covers every connected *labeled* graph on up to
//! seven vertices. Larger orders come from graph6 lists, for which
//! [`generate_unlabeled`] can produce connected graphs up to isomorphism
//! with a girth lower bound.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::{classify, Verdict};
use crate::factors::{enumerate_star_factors, incidence_vectors, FactorError};
use crate::graph::{girth, Girth, Graph};
use crate::graph6::to_graph6;
use crate::iso::{are_isomorphic, invariant};
use crate::solver::{decide_uniform_weighting, verify_outcome, FeasibilityOutcome, Q};

/// Largest order enumerated by brute force over edge subsets.
pub const BUILTIN_MAX_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("built-in enumeration supports 1..={BUILTIN_MAX_ORDER} vertices, got {0}")]
    OrderOutOfRange(usize),
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GirthClass {
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "5")]
    Five,
    #[serde(rename = "6")]
    Six,
    #[serde(rename = "7")]
    Seven,
    #[serde(rename = ">=8")]
    EightPlus,
    #[serde(rename = "inf")]
    Infinite,
}

impl From<Girth> for GirthClass {
    fn from(g: Girth) -> Self {
        match g {
            Girth::Finite(3) => GirthClass::Three,
            Girth::Finite(4) => GirthClass::Four,
            Girth::Finite(5) => GirthClass::Five,
            Girth::Finite(6) => GirthClass::Six,
            Girth::Finite(7) => GirthClass::Seven,
            Girth::Finite(k) => {
                assert!(k >= 8, "simple graphs have girth at least 3");
                GirthClass::EightPlus
            }
            Girth::Infinite => GirthClass::Infinite,
        }
    }
}

impl fmt::Display for GirthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GirthClass::Three => "3",
            GirthClass::Four => "4",
            GirthClass::Five => "5",
            GirthClass::Six => "6",
            GirthClass::Seven => "7",
            GirthClass::EightPlus => ">=8",
            GirthClass::Infinite => "inf",
        })
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn adjacency(n: usize, pairs: &[(usize, usize)], mask: u32) -> [u8; BUILTIN_MAX_ORDER] {
    let mut adj = [0u8; BUILTIN_MAX_ORDER];
    for (b, &(i, j)) in pairs.iter().enumerate() {
        if mask >> b & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    debug_assert!(n <= BUILTIN_MAX_ORDER);
    adj
}

fn mask_connected(n: usize, adj: &[u8]) -> bool {
    let all = ((1u16 << n) - 1) as u8;
    let mut seen = 1u8;
    let mut frontier = 1u8;
    while frontier != 0 {
        let mut next = 0u8;
        for (v, &a) in adj.iter().enumerate().take(n) {
            if frontier >> v & 1 == 1 {
                next |= a;
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == all
}

/// Cheap lower bound check: no triangle (k ≥ 4) and no 4-cycle (k ≥ 5).
fn mask_short_cycle_free(n: usize, adj: &[u8], k: usize) -> bool {
    for i in 0..n {
        for j in i + 1..n {
            let common = (adj[i] & adj[j]).count_ones();
            let adjacent = adj[i] >> j & 1 == 1;
            if k >= 4 && adjacent && common > 0 {
                return false;
            }
            if k >= 5 && common > 1 {
                return false;
            }
        }
    }
    true
}

fn mask_graph(pairs: &[(usize, usize)], n: usize, mask: u32) -> Graph {
    let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p);
    Graph::new(n, edges).expect("pairs are distinct and in range")
}

fn check_order(n: usize) -> Result<(), CensusError> {
    if (1..=BUILTIN_MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(CensusError::OrderOutOfRange(n))
    }
}

/// Every connected labeled graph on `n` vertices, ordered by edge-subset
/// bitmask (bit `b` is the `b`-th pair `(i, j)`, `i < j`, in row-major
/// order).
pub fn generate_connected(n: usize) -> Result<impl Iterator<Item = Graph>, CensusError> {
    generate_connected_girth(n, 0)
}

/// As [`generate_connected`], keeping only graphs of girth at least
/// `girth_min` (forests always pass).
pub fn generate_connected_girth(
    n: usize,
    girth_min: usize,
) -> Result<impl Iterator<Item = Graph>, CensusError> {
    check_order(n)?;
    let ps = pairs(n);
    let total = 1u32 << ps.len();
    Ok((0..total).filter_map(move |mask| {
        let adj = adjacency(n, &ps, mask);
        if !mask_connected(n, &adj) || !mask_short_cycle_free(n, &adj, girth_min) {
            return None;
        }
        let g = mask_graph(&ps, n, mask);
        (girth_min <= 5 || girth(&g).is_at_least(girth_min)).then_some(g)
    }))
}

fn extension_sets(g: &Graph, girth_min: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let dist: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if d[w] == usize::MAX {
                        d[w] = d[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            d
        })
        .collect();
    // a new vertex joined to a and b closes a cycle of length d(a, b) + 2
    let need = girth_min.saturating_sub(2).max(1);
    let mut out = Vec::new();
    for set in 1u32..1 << n {
        let vs: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        let ok = vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| dist[a][b] >= need));
        if ok {
            out.push(vs);
        }
    }
    out
}

/// Connected graphs on `n` vertices with girth ≥ `girth_min`, one per
/// isomorphism class.
///
/// Every connected graph has a vertex whose removal leaves it connected,
/// and deleting a vertex never lowers the girth, so extending each class
/// on `n − 1` vertices by a new vertex in all admissible ways reaches every
/// class on `n`. Duplicates are removed with [`are_isomorphic`] inside
/// invariant buckets. Output is sorted by graph6 string.
///
/// # Panics
/// If `n > 20`; the search is exhaustive and meant for small orders.
pub fn generate_unlabeled(n: usize, girth_min: usize) -> Vec<Graph> {
    assert!(n <= 20, "unlabeled generation is limited to 20 vertices");
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for _ in 1..n {
        let mut buckets: HashMap<Vec<usize>, Vec<Graph>> = HashMap::new();
        for g in &level {
            let k = g.order();
            for s in extension_sets(g, girth_min) {
                let mut edges = g.edges().to_vec();
                edges.extend(s.iter().map(|&v| (v, k)));
                let h = Graph::new(k + 1, edges).expect("new vertex edges are fresh");
                let bucket = buckets.entry(invariant(&h)).or_default();
                if !bucket.iter().any(|x| are_isomorphic(x, &h)) {
                    bucket.push(h);
                }
            }
        }
        level = buckets.into_values().flatten().collect();
        level.sort_by_cached_key(to_graph6);
    }
    level
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleResult {
    Member,
    NotMember,
    Vacuous,
    CapExceeded,
}

/// Per-graph result, kept small so large runs stay cheap to merge.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Outcome {
    n: usize,
    class: Option<GirthClass>,
    oracle: OracleResult,
    uniform: bool,
    classifier: Option<Verdict>,
    witness_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusRow {
    pub n: usize,
    pub girth_class: GirthClass,
    pub graph_count: usize,
    /// Oracle members of Ω.
    pub omega_members: usize,
    /// Graphs whose star-factors all have the same number of edges.
    pub u_members: usize,
    pub vacuous: usize,
    pub disagreements: usize,
    pub cap_exceeded: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Disagreement {
    pub graph6: String,
    pub oracle: OracleResult,
    pub classifier: Option<Verdict>,
    pub witness_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Census {
    pub version: String,
    pub cap: usize,
    pub girth_min: usize,
    pub rows: Vec<CensusRow>,
    pub disagreements: Vec<Disagreement>,
}

impl Census {
    pub fn total_disagreements(&self) -> usize {
        self.rows.iter().map(|r| r.disagreements).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusConfig {
    pub cap: usize,
    /// Graphs with finite girth below this are skipped.
    pub girth_min: usize,
    pub workers: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            cap: crate::factors::DEFAULT_CAP,
            girth_min: 5,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

fn examine(g: &Graph, cap: usize) -> Outcome {
    let gi = girth(g);
    let mut out = Outcome {
        n: g.order(),
        class: (g.order() > 0).then(|| gi.into()),
        oracle: OracleResult::Vacuous,
        uniform: false,
        classifier: None,
        witness_ok: true,
    };
    let vectors = match enumerate_star_factors(g, cap) {
        Ok(fs) => incidence_vectors(&fs, g.size()),
        Err(FactorError::Vacuous) => Vec::new(),
        Err(FactorError::CapExceeded { .. }) => {
            out.oracle = OracleResult::CapExceeded;
            return out;
        }
    };
    if !vectors.is_empty() {
        let first = vectors[0].ones();
        out.uniform = vectors.iter().all(|v| v.ones() == first);
        out.oracle = match decide_uniform_weighting(&vectors) {
            FeasibilityOutcome::Witness { .. } => OracleResult::Member,
            FeasibilityOutcome::Refutation(_) => OracleResult::NotMember,
        };
    }
    if gi.is_at_least(5) {
        if let Ok(c) = classify(g, cap) {
            out.classifier = Some(c.verdict);
            if let Some(w) = &c.witness {
                let common: Q = vectors[0]
                    .bits
                    .iter()
                    .zip(&w.weights)
                    .filter(|(&b, _)| b)
                    .map(|(_, q)| q.clone())
                    .sum();
                let claim = FeasibilityOutcome::Witness { weighting: w.clone(), common_weight: common };
                out.witness_ok = verify_outcome(&vectors, &claim);
            }
        }
    }
    out
}

fn disagrees(o: &Outcome) -> bool {
    let Some(c) = o.classifier else {
        return false;
    };
    let expected = match o.oracle {
        OracleResult::Member => Verdict::Member,
        OracleResult::NotMember => Verdict::NotMember,
        OracleResult::Vacuous => Verdict::Vacuous,
        OracleResult::CapExceeded => return false,
    };
    c != expected || !o.witness_ok
}

/// Oracle (and, for girth ≥ 5, classifier) on every graph passing the
/// girth filter. Results are merged in input order, so the output does not
/// depend on `workers`.
pub fn cross_validate<I>(graphs: I, cfg: CensusConfig) -> Result<Census, CensusError>
where
    I: IntoIterator<Item = Graph>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| CensusError::Pool(e.to_string()))?;
    let kept: Vec<Graph> = graphs.into_iter().filter(|g| girth(g).is_at_least(cfg.girth_min)).collect();
    let outcomes: Vec<Outcome> = pool.install(|| kept.par_iter().map(|g| examine(g, cfg.cap)).collect());

    let mut rows: BTreeMap<(usize, GirthClass), CensusRow> = BTreeMap::new();
    let mut log = Vec::new();
    for (g, o) in kept.iter().zip(&outcomes) {
        let Some(class) = o.class else { continue };
        let row = rows.entry((o.n, class)).or_insert(CensusRow {
            n: o.n,
            girth_class: class,
            graph_count: 0,
            omega_members: 0,
            u_members: 0,
            vacuous: 0,
            disagreements: 0,
            cap_exceeded: 0,
        });
        row.graph_count += 1;
        match o.oracle {
            OracleResult::Member => row.omega_members += 1,
            OracleResult::Vacuous => row.vacuous += 1,
            OracleResult::CapExceeded => row.cap_exceeded += 1,
            OracleResult::NotMember => {}
        }
        row.u_members += o.uniform as usize;
        if disagrees(o) {
            row.disagreements += 1;
            log.push(Disagreement {
                graph6: to_graph6(g),
                oracle: o.oracle,
                classifier: o.classifier,
                witness_verified: o.witness_ok,
            });
        }
    }
    Ok(Census {
        version: env!("CARGO_PKG_VERSION").to_string(),
        cap: cfg.cap,
        girth_min: cfg.girth_min,
        rows: rows.into_values().collect(),
        disagreements: log,
    })
}

/// [`cross_validate`] over the built-in labeled enumeration.
pub fn cross_validate_builtin(orders: RangeInclusive<usize>, cfg: CensusConfig) -> Result<Census, CensusError> {
    for n in [*orders.start(), *orders.end()] {
        check_order(n)?;
    }
    let mut graphs = Vec::new();
    for n in orders {
        graphs.extend(generate_connected_girth(n, cfg.girth_min)?);
    }
    cross_validate(graphs, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Tsv,
    Json,
}

const COLUMNS: [&str; 8] = ["n", "girth", "graphs", "omega", "uniform", "vacuous", "cap_exceeded", "disagreements"];

fn row_cells(r: &CensusRow) -> [String; 8] {
    [
        r.n.to_string(),
        r.girth_class.to_string(),
        r.graph_count.to_string(),
        r.omega_members.to_string(),
        r.u_members.to_string(),
        r.vacuous.to_string(),
        r.cap_exceeded.to_string(),
        r.disagreements.to_string(),
    ]
}

pub fn render(c: &Census, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Json => {
            out = serde_json::to_string_pretty(c).expect("census serializes");
            out.push('\n');
        }
        ReportFormat::Tsv => {
            writeln!(out, "# starfactor {} cap={} girth_min={}", c.version, c.cap, c.girth_min).unwrap();
            writeln!(out, "{}", COLUMNS.join("\t")).unwrap();
            for r in &c.rows {
                writeln!(out, "{}", row_cells(r).join("\t")).unwrap();
            }
            for d in &c.disagreements {
                writeln!(out, "# disagreement\t{}\toracle={:?}\tclassifier={:?}", d.graph6, d.oracle, d.classifier)
                    .unwrap();
            }
        }
        ReportFormat::Text => {
            writeln!(out, "starfactor {} census (cap {}, girth >= {})", c.version, c.cap, c.girth_min).unwrap();
            let cells: Vec<[String; 8]> = c.rows.iter().map(row_cells).collect();
            let widths: Vec<usize> = (0..8)
                .map(|i| cells.iter().map(|r| r[i].len()).chain([COLUMNS[i].len()]).max().unwrap())
                .collect();
            let line = |items: &[&str]| -> String {
                let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                padded.join("  ")
            };
            writeln!(out, "{}", line(&COLUMNS)).unwrap();
            for r in &cells {
                let refs: Vec<&str> = r.iter().map(String::as_str).collect();
                writeln!(out, "{}", line(&refs)).unwrap();
            }
            let graphs: usize = c.rows.iter().map(|r| r.graph_count).sum();
            writeln!(out, "total: {graphs} graphs, {} disagreements", c.total_disagreements()).unwrap();
            for d in &c.disagreements {
                writeln!(
                    out,
                    "disagreement: {} oracle={:?} classifier={:?} witness_verified={}",
                    d.graph6, d.oracle, d.classifier, d.witness_verified
                )
                .unwrap();
            }
        }
    }
    out
}
