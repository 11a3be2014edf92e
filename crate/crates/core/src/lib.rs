//! Uniformly weighted star-factors.
//!
//! A graph belongs to Ω when some strictly positive edge-weighting gives
//! every star-factor the same total weight. This crate decides membership
//! two ways:
//!
//! * [`solver::omega_oracle`] enumerates all star-factors and solves an exact
//!   rational linear program, returning a checkable witness or refutation;
//! * [`classifier::classify`] applies the structural characterization for
//!   girth at least five (leaves, stems and the core left after removing
//!   them), constructing a witness weighting directly, and falls back to the
//!   oracle on components of girth three or four.
//!
//! [`census`] cross-validates the two exhaustively on small graphs.

pub mod census;
pub mod classifier;
pub mod edgelist;
pub mod factors;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod report;
pub mod simplex;
pub mod solver;

pub use classifier::{classify, CaseTag, Classification, ClassifyError, Route, Verdict};
pub use edgelist::{parse_edge_list, to_edge_list, ParseError};
pub use factors::{
    edge_count_spectrum, enumerate_star_factors, incidence_vectors, EdgeCountSpectrum,
    FactorError, IncidenceVector, Star, StarFactor, DEFAULT_CAP,
};
pub use graph::{
    classify_vertices, connected_components, delete_edges, girth, induced_delete, Girth, Graph,
    GraphError, VertexClass,
};
pub use graph6::{parse_graph6, parse_graph6_lines, to_graph6, Graph6Error};
pub use solver::{
    decide_uniform_weighting, omega_oracle, verify_outcome, FeasibilityOutcome, OracleVerdict,
    Refutation, Weighting,
};
