//! Structural membership test for graphs of girth at least five.
//!
//! For a connected graph `G` with girth ≥ 5 and no isolated vertex:
//!
//! * if `δ(G) ≥ 2`, `G` is a member iff it is `C₅` or `C₇`;
//! * if every vertex is a leaf or a stem, `G` is a member (its star-factor is
//!   unique);
//! * otherwise delete all leaves and stems. `G` is a member iff every
//!   remaining component (the *core*) is
//!   - a 5-cycle with at most two vertices of degree ≥ 3 in `G`, and those
//!     two (if present) non-adjacent,
//!   - a star `K₁,ₘ` whose center has degree exactly `m` in `G` when
//!     `m ≥ 2`, or
//!   - a single vertex.
//!
//! Members get an explicit weighting: every edge weighs 1 except the edge of
//! each core `K₁,₁`, which weighs 2 (covering that edge costs the same as
//! covering both endpoints from stems).
//!
//! Components of girth 3 or 4 go to the brute-force oracle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    classify_vertices, connected_components, girth, induced_delete, induced_subgraph, EdgeIdx,
    Girth, Graph, InducedSubgraph, Vertex,
};
use crate::solver::{omega_oracle, OracleVerdict, Refutation, Weighting};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("more than {cap} star-factors in a component routed to the oracle")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Member,
    NotMember,
    Vacuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    StructuralGirth5,
    OracleFallback,
}

/// Which branch of the characterization decided a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    C5,
    C7,
    AllLeafOrStem,
    Case4a,
    Case4b,
    Case4c,
    /// Core components of more than one of the 4a/4b/4c kinds.
    Mixed4,
    /// `δ ≥ 2`, girth ≥ 5, but not `C₅` or `C₇`.
    NegDelta2Girth,
    /// Some core component violates the allowed shapes.
    NegCoreShape,
    /// Oracle found a refutation.
    Refuted,
    /// Oracle found a witness.
    OracleMember,
    /// Member components decided by different branches.
    Composite,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::C5 => "C5",
            CaseTag::C7 => "C7",
            CaseTag::AllLeafOrStem => "AllLeafOrStem",
            CaseTag::Case4a => "Case4a",
            CaseTag::Case4b => "Case4b",
            CaseTag::Case4c => "Case4c",
            CaseTag::Mixed4 => "Mixed4",
            CaseTag::NegDelta2Girth => "NegDelta2Girth",
            CaseTag::NegCoreShape => "NegCoreShape",
            CaseTag::Refuted => "Refuted",
            CaseTag::OracleMember => "OracleMember",
            CaseTag::Composite => "Composite",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoreComponentKind {
    /// Vertices of the cycle with degree ≥ 3 in `G`.
    FiveCycle {
        #[serde(rename = "highDegVerts")]
        high_degree: Vec<Vertex>,
    },
    /// `K₁,ₘ`; for `m = 1` the center is the lower endpoint.
    Star { center: Vertex, m: usize },
    IsolatedVertex,
    Other { reason: String },
}

/// A component of `G − (leaves ∪ stems)`, in `G`'s vertex numbering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreComponent {
    pub vertices: Vec<Vertex>,
    pub kind: CoreComponentKind,
    /// `Case4a`/`Case4b`/`Case4c` when admissible, else `NegCoreShape`.
    pub tag: CaseTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

impl CoreComponent {
    pub fn is_admissible(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentResult {
    pub vertices: Vec<Vertex>,
    pub verdict: Verdict,
    pub route: Route,
    pub case_tag: CaseTag,
    pub core: Vec<CoreComponent>,
}

/// Oracle refutation for one component; `edges[i]` is the edge of `G`
/// matching coordinate `i` of the certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentRefutation {
    pub component: usize,
    pub edges: Vec<EdgeIdx>,
    pub refutation: Refutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    /// `None` only for vacuous inputs.
    pub route: Option<Route>,
    pub case_tag: Option<CaseTag>,
    pub girth: Girth,
    pub witness: Option<Weighting>,
    pub refutation: Option<ComponentRefutation>,
    pub components: Vec<ComponentResult>,
}

impl Classification {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }
}

/// `G − (L ∪ S)` with the index maps back to `G`.
pub fn remove_leaves_and_stems(g: &Graph) -> InducedSubgraph {
    let vc = classify_vertices(g);
    let mut gone: Vec<Vertex> = vc.leaves.iter().chain(&vc.stems).copied().collect();
    gone.sort_unstable();
    gone.dedup();
    induced_delete(g, &gone).expect("leaves and stems are vertices of g")
}

fn describe_core_component(g: &Graph, core: &InducedSubgraph, comp: &[Vertex]) -> CoreComponent {
    let h = &core.graph;
    let k = comp.len();
    let edges = comp.iter().map(|&v| h.degree(v)).sum::<usize>() / 2;
    let vertices: Vec<Vertex> = comp.iter().map(|&v| core.new_to_old[v]).collect();

    let (kind, tag, violation) = if k == 1 {
        (CoreComponentKind::IsolatedVertex, CaseTag::Case4c, None)
    } else if let Some(&c) = comp.iter().find(|&&v| h.degree(v) == k - 1).filter(|_| edges == k - 1) {
        let center = core.new_to_old[c];
        let m = k - 1;
        let violation = (m >= 2 && g.degree(center) != m).then(|| {
            format!("star center {center} has degree {} in G, expected {m}", g.degree(center))
        });
        (CoreComponentKind::Star { center, m }, CaseTag::Case4b, violation)
    } else if k == 5 && edges == 5 && comp.iter().all(|&v| h.degree(v) == 2) {
        let high: Vec<Vertex> = vertices.iter().copied().filter(|&v| g.degree(v) >= 3).collect();
        let violation = match high.as_slice() {
            [] | [_] => None,
            [a, b] if !g.has_edge(*a, *b) => None,
            [a, b] => Some(format!("adjacent vertices {a} and {b} have degree >= 3 in G")),
            _ => Some(format!("{} vertices have degree >= 3 in G", high.len())),
        };
        (CoreComponentKind::FiveCycle { high_degree: high }, CaseTag::Case4a, violation)
    } else {
        let reason = format!("{k} vertices and {edges} edges: neither a star nor a 5-cycle");
        (CoreComponentKind::Other { reason: reason.clone() }, CaseTag::NegCoreShape, Some(reason))
    };
    let tag = if violation.is_some() { CaseTag::NegCoreShape } else { tag };
    CoreComponent { vertices, kind, tag, violation }
}

/// Components of `G − (L ∪ S)`, described in `G`'s numbering.
pub fn core_components(g: &Graph) -> Vec<CoreComponent> {
    let core = remove_leaves_and_stems(g);
    connected_components(&core.graph)
        .iter()
        .map(|comp| describe_core_component(g, &core, comp))
        .collect()
}

/// Weight 2 on the edge of every core `K₁,₁`, weight 1 elsewhere.
///
/// With no core `K₁,₁` this is the constant weighting.
pub fn construct_weighting(g: &Graph, core: &[CoreComponent]) -> Result<Weighting, ClassifyError> {
    if let Some(bad) = core.iter().find(|c| !c.is_admissible()) {
        return Err(ClassifyError::Precondition(format!(
            "no witness for a non-member: {}",
            bad.violation.as_deref().unwrap_or_default()
        )));
    }
    let mut w = vec![1u64; g.size()];
    for c in core {
        if let (CoreComponentKind::Star { m: 1, .. }, [u, v]) = (&c.kind, c.vertices.as_slice()) {
            let e = g
                .edge_index(*u, *v)
                .ok_or_else(|| ClassifyError::Precondition(format!("{u}-{v} is not an edge")))?;
            w[e] = 2;
        }
    }
    Ok(Weighting::from_integers(w))
}

fn single(g: &Graph, verdict: Verdict, tag: CaseTag, core: Vec<CoreComponent>, witness: Option<Weighting>) -> Classification {
    Classification {
        verdict,
        route: Some(Route::StructuralGirth5),
        case_tag: Some(tag),
        girth: girth(g),
        witness,
        refutation: None,
        components: vec![ComponentResult {
            vertices: (0..g.order()).collect(),
            verdict,
            route: Route::StructuralGirth5,
            case_tag: tag,
            core,
        }],
    }
}

/// Structural decision for a connected graph of girth ≥ 5 without isolated
/// vertices.
pub fn classify_connected_girth5(g: &Graph) -> Result<Classification, ClassifyError> {
    let n = g.order();
    if n < 2 || g.has_isolated_vertex() {
        return Err(ClassifyError::Precondition("graph has an isolated vertex".into()));
    }
    if !g.is_connected() {
        return Err(ClassifyError::Precondition("graph is not connected".into()));
    }
    if !girth(g).is_at_least(5) {
        return Err(ClassifyError::Precondition(format!("girth {} is below 5", girth(g))));
    }

    if g.min_degree() >= Some(2) {
        // connected with all degrees 2 means a cycle
        let cycle = (0..n).all(|v| g.degree(v) == 2);
        return Ok(match (cycle, n) {
            (true, 5) => single(g, Verdict::Member, CaseTag::C5, vec![], Some(Weighting::constant(g.size()))),
            (true, 7) => single(g, Verdict::Member, CaseTag::C7, vec![], Some(Weighting::constant(g.size()))),
            _ => single(g, Verdict::NotMember, CaseTag::NegDelta2Girth, vec![], None),
        });
    }

    let vc = classify_vertices(g);
    if (0..n).all(|v| vc.is_leaf_or_stem(v)) {
        let w = construct_weighting(g, &[])?;
        return Ok(single(g, Verdict::Member, CaseTag::AllLeafOrStem, vec![], Some(w)));
    }

    let core = core_components(g);
    if core.iter().any(|c| !c.is_admissible()) {
        return Ok(single(g, Verdict::NotMember, CaseTag::NegCoreShape, core, None));
    }
    let mut tags: Vec<CaseTag> = core.iter().map(|c| c.tag).collect();
    tags.sort_by_key(|t| t.as_str());
    tags.dedup();
    let tag = if tags.len() == 1 { tags[0] } else { CaseTag::Mixed4 };
    let w = construct_weighting(g, &core)?;
    Ok(single(g, Verdict::Member, tag, core, Some(w)))
}

/// Membership for an arbitrary graph, component by component.
///
/// Star-factors of a disjoint union are exactly unions of star-factors of
/// the parts, so the equal-weight constraints decouple across components.
pub fn classify(g: &Graph, cap: usize) -> Result<Classification, ClassifyError> {
    let whole_girth = girth(g);
    if g.order() == 0 || g.has_isolated_vertex() {
        return Ok(Classification {
            verdict: Verdict::Vacuous,
            route: None,
            case_tag: None,
            girth: whole_girth,
            witness: None,
            refutation: None,
            components: Vec::new(),
        });
    }

    let mut components = Vec::new();
    let mut weights = vec![None; g.size()];
    let mut refutation = None;
    for (idx, comp) in connected_components(g).iter().enumerate() {
        let sub = induced_subgraph(g, comp).expect("component vertices are in range");
        let h = &sub.graph;
        let (verdict, route, tag, core, witness) = if girth(h).is_at_least(5) {
            let c = classify_connected_girth5(h)?;
            let part = c.components.into_iter().next().expect("one component");
            (c.verdict, Route::StructuralGirth5, part.case_tag, part.core, c.witness)
        } else {
            match omega_oracle(h, cap) {
                OracleVerdict::Member { weighting, .. } => {
                    (Verdict::Member, Route::OracleFallback, CaseTag::OracleMember, vec![], Some(weighting))
                }
                OracleVerdict::NotMember(r) => {
                    if refutation.is_none() {
                        let edges = (0..h.size()).map(|e| sub.parent_edge(g, e)).collect();
                        refutation = Some(ComponentRefutation { component: idx, edges, refutation: r });
                    }
                    (Verdict::NotMember, Route::OracleFallback, CaseTag::Refuted, vec![], None)
                }
                OracleVerdict::CapExceeded { cap } => return Err(ClassifyError::CapExceeded { cap }),
                OracleVerdict::Vacuous => unreachable!("components of a graph without isolated vertices"),
            }
        };
        if let Some(w) = witness {
            for (e, q) in w.weights.into_iter().enumerate() {
                weights[sub.parent_edge(g, e)] = Some(q);
            }
        }
        let core = core
            .into_iter()
            .map(|mut c| {
                c.vertices = c.vertices.iter().map(|&v| sub.new_to_old[v]).collect();
                c.kind = match c.kind {
                    CoreComponentKind::FiveCycle { high_degree } => CoreComponentKind::FiveCycle {
                        high_degree: high_degree.iter().map(|&v| sub.new_to_old[v]).collect(),
                    },
                    CoreComponentKind::Star { center, m } => {
                        CoreComponentKind::Star { center: sub.new_to_old[center], m }
                    }
                    other => other,
                };
                c
            })
            .collect();
        components.push(ComponentResult { vertices: comp.clone(), verdict, route, case_tag: tag, core });
    }

    let member = components.iter().all(|c| c.verdict == Verdict::Member);
    let route = if components.iter().any(|c| c.route == Route::OracleFallback) {
        Route::OracleFallback
    } else {
        Route::StructuralGirth5
    };
    let case_tag = if member {
        let first = components[0].case_tag;
        if components.iter().all(|c| c.case_tag == first) {
            first
        } else {
            CaseTag::Composite
        }
    } else {
        components.iter().find(|c| c.verdict != Verdict::Member).unwrap().case_tag
    };
    let witness = member.then(|| {
        Weighting::normalized(weights.into_iter().map(|w| w.expect("every edge lies in a component")).collect())
    });
    Ok(Classification {
        verdict: if member { Verdict::Member } else { Verdict::NotMember },
        route: Some(route),
        case_tag: Some(case_tag),
        girth: whole_girth,
        witness,
        refutation,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::{enumerate_star_factors, incidence_vectors, DEFAULT_CAP};
    use crate::families::{cycle, path, petersen, spider, with_pendant_path};
    use crate::solver::{verify_outcome, FeasibilityOutcome};
    use num::Zero;

    fn witness_equalizes(g: &Graph, w: &Weighting) -> bool {
        let fs = enumerate_star_factors(g, DEFAULT_CAP).unwrap();
        let vs = incidence_vectors(&fs, g.size());
        let common = vs[0]
            .bits
            .iter()
            .zip(&w.weights)
            .filter(|(&b, _)| b)
            .fold(crate::solver::Q::zero(), |a, (_, q)| a + q);
        verify_outcome(&vs, &FeasibilityOutcome::Witness { weighting: w.clone(), common_weight: common })
    }

    fn structural(g: &Graph) -> Classification {
        classify_connected_girth5(g).unwrap()
    }

    #[test]
    fn remove_leaves_and_stems_examples() {
        let core = remove_leaves_and_stems(&path(7));
        assert_eq!(core.graph, path(3));
        assert_eq!(core.new_to_old, vec![2, 3, 4]);
        assert_eq!(remove_leaves_and_stems(&cycle(5)).graph, cycle(5));
    }

    #[test]
    fn cycles() {
        let c = structural(&cycle(5));
        assert_eq!((c.verdict, c.case_tag), (Verdict::Member, Some(CaseTag::C5)));
        assert!(c.witness.unwrap().is_constant());
        let c = structural(&cycle(7));
        assert_eq!(c.case_tag, Some(CaseTag::C7));
        assert_eq!(c.witness.unwrap(), Weighting::constant(7));
        for n in [6, 8, 9] {
            let c = structural(&cycle(n));
            assert_eq!((c.verdict, c.case_tag), (Verdict::NotMember, Some(CaseTag::NegDelta2Girth)));
        }
    }

    #[test]
    fn petersen_is_not_member() {
        let c = structural(&petersen());
        assert_eq!(c.case_tag, Some(CaseTag::NegDelta2Girth));
    }

    #[test]
    fn paths() {
        for n in 2..=7 {
            let c = structural(&path(n));
            assert!(c.is_member(), "P{n}");
            assert!(witness_equalizes(&path(n), c.witness.as_ref().unwrap()));
        }
        let c = structural(&path(8));
        assert_eq!(c.case_tag, Some(CaseTag::NegCoreShape));
        assert!(matches!(c.components[0].core[0].kind, CoreComponentKind::Other { .. }));
    }

    #[test]
    fn p6_weighting_doubles_the_middle_edge() {
        let c = structural(&path(6));
        assert_eq!(c.case_tag, Some(CaseTag::Case4b));
        assert_eq!(c.witness.unwrap(), Weighting::from_integers([1, 1, 2, 1, 1]));
    }

    #[test]
    fn spiders() {
        let c = structural(&spider(3, 2));
        assert_eq!((c.verdict, c.case_tag), (Verdict::Member, Some(CaseTag::Case4c)));
        // legs of three: the core is K1,3 whose center has degree 3
        let c = structural(&spider(3, 3));
        assert_eq!((c.verdict, c.case_tag), (Verdict::Member, Some(CaseTag::Case4b)));
        // legs of four: the core is a subdivided star, not a star
        let c = structural(&spider(3, 4));
        assert_eq!((c.verdict, c.case_tag), (Verdict::NotMember, Some(CaseTag::NegCoreShape)));
    }

    #[test]
    fn five_cycle_with_pendant_paths() {
        let g = with_pendant_path(&with_pendant_path(&cycle(5), 0, 2), 2, 2);
        let c = structural(&g);
        assert_eq!((c.verdict, c.case_tag), (Verdict::Member, Some(CaseTag::Case4a)));
        assert!(witness_equalizes(&g, c.witness.as_ref().unwrap()));

        let g = with_pendant_path(&with_pendant_path(&cycle(5), 0, 2), 1, 2);
        let c = structural(&g);
        assert_eq!((c.verdict, c.case_tag), (Verdict::NotMember, Some(CaseTag::NegCoreShape)));
        let core = &c.components[0].core;
        assert_eq!(core.len(), 1);
        assert_eq!(core[0].kind, CoreComponentKind::FiveCycle { high_degree: vec![0, 1] });
    }

    #[test]
    fn star_center_degree_condition() {
        // core K1,2 = 2-3-4 of P7, then give the center 3 an extra pendant P2
        let g = with_pendant_path(&path(7), 3, 2);
        let c = structural(&g);
        assert_eq!(c.case_tag, Some(CaseTag::NegCoreShape));
        assert!(c.components[0].core[0].violation.as_ref().unwrap().contains("degree 3"));
    }

    #[test]
    fn preconditions() {
        let k3 = cycle(3);
        assert!(matches!(classify_connected_girth5(&k3), Err(ClassifyError::Precondition(_))));
        let two = path(2).disjoint_union(&path(2));
        assert!(matches!(classify_connected_girth5(&two), Err(ClassifyError::Precondition(_))));
        assert!(classify_connected_girth5(&Graph::empty(1)).is_err());
    }

    #[test]
    fn construct_weighting_refuses_non_members() {
        let g = path(8);
        let core = core_components(&g);
        assert!(construct_weighting(&g, &core).is_err());
    }

    #[test]
    fn disjoint_unions() {
        let g = cycle(5).disjoint_union(&cycle(7));
        let c = classify(&g, DEFAULT_CAP).unwrap();
        assert_eq!(c.verdict, Verdict::Member);
        assert_eq!(c.case_tag, Some(CaseTag::Composite));
        assert!(witness_equalizes(&g, c.witness.as_ref().unwrap()));

        let g = cycle(5).disjoint_union(&cycle(6));
        let c = classify(&g, DEFAULT_CAP).unwrap();
        assert_eq!((c.verdict, c.case_tag), (Verdict::NotMember, Some(CaseTag::NegDelta2Girth)));
        assert_eq!(c.components[1].vertices, (5..11).collect::<Vec<_>>());
    }

    #[test]
    fn girth_three_goes_to_the_oracle() {
        // triangle 0-1-2 with leaf 3 on 0: w(12) = w(01) + w(02) works
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let c = classify(&g, DEFAULT_CAP).unwrap();
        assert_eq!(c.route, Some(Route::OracleFallback));
        assert_eq!((c.verdict, c.case_tag), (Verdict::Member, Some(CaseTag::OracleMember)));
        assert!(witness_equalizes(&g, c.witness.as_ref().unwrap()));

        // K4: stars K1,3 and perfect matchings cannot balance
        let k4 = crate::families::complete(4);
        let c = classify(&k4, DEFAULT_CAP).unwrap();
        assert_eq!((c.verdict, c.case_tag), (Verdict::NotMember, Some(CaseTag::Refuted)));
        assert_eq!(c.refutation.unwrap().edges, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn vacuous() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let c = classify(&g, DEFAULT_CAP).unwrap();
        assert_eq!(c.verdict, Verdict::Vacuous);
        assert_eq!(c.route, None);
    }

    #[test]
    fn cap_exceeded_propagates() {
        let k5 = crate::families::complete(5);
        assert_eq!(classify(&k5, 2), Err(ClassifyError::CapExceeded { cap: 2 }));
    }

    #[test]
    fn relabeled_component_indices_map_back() {
        // C5 on vertices 3..8 after an isolated-free prefix component
        let g = path(3).disjoint_union(&with_pendant_path(&cycle(5), 0, 2));
        let c = classify(&g, DEFAULT_CAP).unwrap();
        assert!(c.is_member());
        let core = &c.components[1].core;
        assert!(core.iter().all(|cc| cc.vertices.iter().all(|&v| v >= 3)));
    }
}
