//! JSON report for a membership decision.
//!
//! ```json
//! {
//!   "verdict": "Member",
//!   "route": "StructuralGirth5",
//!   "caseTag": "Case4b",
//!   "girth": 7,
//!   "order": 6,
//!   "size": 5,
//!   "components": [{"vertices": [2, 3], "kind": {"Star": {"center": 2, "m": 1}}, "tag": "Case4b"}],
//!   "parts": [{"vertices": [0, 1, 2, 3, 4, 5], "verdict": "Member", "route": "StructuralGirth5", "caseTag": "Case4b"}],
//!   "witness": [{"u": 0, "v": 1, "weight": 1}, ...],
//!   "refutation": null
//! }
//! ```
//!
//! `components` lists the core components (what is left after deleting
//! leaves and stems) of every connected part decided structurally; `parts`
//! lists the connected components of the input. Weights are JSON integers
//! when integral, otherwise `"p/q"` strings. A refutation carries the
//! certificate: one coefficient per row `x_{i+1} − x₁`, and the resulting
//! nonnegative combination per edge of the refuted part. (No star-factor
//! strictly contains another, since dropping any edge of a spanning star
//! forest uncovers a vertex, so a refutation always involves at least three
//! factors and there is no simpler "pair" form.)

use std::str::FromStr;

use num::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::classifier::{CaseTag, Classification, CoreComponent, Route, Verdict};
use crate::graph::{girth, induced_subgraph, Girth, Graph, Vertex};
use crate::solver::{OracleVerdict, Refutation, Weighting, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub verdict: Verdict,
    pub route: Option<Route>,
    pub case_tag: Option<CaseTag>,
    pub girth: Girth,
    pub order: usize,
    pub size: usize,
    pub components: Vec<CoreComponent>,
    pub parts: Vec<Part>,
    pub witness: Option<Vec<WeightedEdge>>,
    pub refutation: Option<RefutationReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Part {
    pub vertices: Vec<Vertex>,
    pub verdict: Verdict,
    pub route: Route,
    pub case_tag: CaseTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightValue {
    Integer(u64),
    Rational(String),
}

impl WeightValue {
    pub fn from_rational(q: &Q) -> WeightValue {
        match (q.denom().is_one(), q.numer().to_u64()) {
            (true, Some(n)) => WeightValue::Integer(n),
            _ => WeightValue::Rational(q.to_string()),
        }
    }

    pub fn to_rational(&self) -> Option<Q> {
        match self {
            WeightValue::Integer(n) => Some(Q::from_integer((*n).into())),
            WeightValue::Rational(s) => Q::from_str(s).ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub weight: WeightValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub coeffs: Vec<String>,
    pub forced_zero: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RefutationReport {
    /// Index into `parts` (0 for whole-graph oracle runs).
    pub component: usize,
    /// Edges of the refuted part, in certificate coordinate order.
    pub edges: Vec<[Vertex; 2]>,
    pub certificate: Certificate,
}

impl Report {
    /// `"Member (C5)"`, `"NotMember (NegCoreShape)"`, `"Vacuous"`.
    pub fn headline(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Member => "Member",
            Verdict::NotMember => "NotMember",
            Verdict::Vacuous => "Vacuous",
        };
        match self.case_tag {
            Some(tag) => format!("{verdict} ({})", tag.as_str()),
            None => verdict.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Witness weights as rationals, if present and well formed.
    pub fn witness_weights(&self) -> Option<Vec<Q>> {
        self.witness.as_ref()?.iter().map(|e| e.weight.to_rational()).collect()
    }
}

pub fn weighted_edges(g: &Graph, w: &Weighting) -> Vec<WeightedEdge> {
    g.edges()
        .iter()
        .zip(&w.weights)
        .map(|(&(u, v), q)| WeightedEdge { u, v, weight: WeightValue::from_rational(q) })
        .collect()
}

/// `part` is `g` restricted to the refuted component, `to_parent` maps its
/// vertices back.
fn refutation_report(part: &Graph, to_parent: &[Vertex], component: usize, r: &Refutation) -> RefutationReport {
    let lift = |pairs: Vec<[Vertex; 2]>| -> Vec<[Vertex; 2]> {
        pairs.into_iter().map(|[u, v]| [to_parent[u], to_parent[v]]).collect()
    };
    let edges = lift(part.edges().iter().map(|&(u, v)| [u, v]).collect());
    let certificate = Certificate {
        coeffs: r.coeffs.iter().map(ToString::to_string).collect(),
        forced_zero: r.forced_zero.iter().map(ToString::to_string).collect(),
    };
    RefutationReport { component, edges, certificate }
}

pub fn classification_report(g: &Graph, c: &Classification) -> Report {
    let refutation = c.refutation.as_ref().map(|r| {
        let vertices = &c.components[r.component].vertices;
        let sub = induced_subgraph(g, vertices).expect("component vertices are in range");
        refutation_report(&sub.graph, &sub.new_to_old, r.component, &r.refutation)
    });
    Report {
        verdict: c.verdict,
        route: c.route,
        case_tag: c.case_tag,
        girth: c.girth,
        order: g.order(),
        size: g.size(),
        components: c.components.iter().flat_map(|p| p.core.iter().cloned()).collect(),
        parts: c
            .components
            .iter()
            .map(|p| Part { vertices: p.vertices.clone(), verdict: p.verdict, route: p.route, case_tag: p.case_tag })
            .collect(),
        witness: c.witness.as_ref().map(|w| weighted_edges(g, w)),
        refutation,
    }
}

/// Report for a whole-graph oracle run; `None` when the cap was exceeded.
pub fn oracle_report(g: &Graph, verdict: &OracleVerdict) -> Option<Report> {
    let (v, tag, witness, refutation) = match verdict {
        OracleVerdict::Member { weighting, .. } => {
            (Verdict::Member, Some(CaseTag::OracleMember), Some(weighted_edges(g, weighting)), None)
        }
        OracleVerdict::NotMember(r) => {
            let identity: Vec<Vertex> = (0..g.order()).collect();
            (Verdict::NotMember, Some(CaseTag::Refuted), None, Some(refutation_report(g, &identity, 0, r)))
        }
        OracleVerdict::Vacuous => (Verdict::Vacuous, None, None, None),
        OracleVerdict::CapExceeded { .. } => return None,
    };
    let route = (v != Verdict::Vacuous).then_some(Route::OracleFallback);
    let parts = match (route, tag) {
        (Some(route), Some(case_tag)) => {
            vec![Part { vertices: (0..g.order()).collect(), verdict: v, route, case_tag }]
        }
        _ => Vec::new(),
    };
    Some(Report {
        verdict: v,
        route,
        case_tag: tag,
        girth: girth(g),
        order: g.order(),
        size: g.size(),
        components: Vec::new(),
        parts,
        witness,
        refutation,
    })
}
