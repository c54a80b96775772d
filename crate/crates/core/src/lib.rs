//! Exact edge-fault tolerance of hypercube-like networks.
//!
//! * [`graph`]: bitset graphs, vertex and edge sets, the text graph format.
//! * [`builder`]: the ⊕ construction, hypercubes, seeded random members of
//!   HL_n, construction traces and the fig1 fixture.
//! * [`solver`]: the h-edge-cut predicate, canonical cuts and the exact
//!   h-super edge-connectivity solvers.
//! * [`lemma`]: exhaustive verification of the supporting bounds.
//! * [`kappa`]: brute-force h-super vertex-connectivity.
//! * [`report`]: the JSON report format shared by all results.

pub mod builder;
pub mod error;
pub mod graph;
pub mod kappa;
pub mod lemma;
pub mod report;
pub mod solver;

pub use builder::{
    fig1_graph, hypercube, oplus, random_hl, validate_trace, ConstructionTrace, HlGraph, Matching,
};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, Graph, VertexSet};
pub use kappa::{is_h_vertex_cut, kappa_sh_exact, KappaOutcome, KappaReport};
pub use lemma::{LabOptions, LemmaId, LemmaVerdict};
pub use report::Report;
pub use solver::{
    canonical_cut, is_h_edge_cut, lambda_sh_exact, CutReport, LambdaOutcome, Method, SolverOptions,
};
