//! Combinatorial decision machinery for finite directed hypergraphs.
//!
//! The library normalizes and reduces a hypergraph through a fixed family of
//! minor operations and then either constructs a replayable certificate
//! exhibiting one of four forbidden minors below it, or reports an
//! undirected reduced hypergraph with the relevant structural conditions
//! checked. All algorithms are deterministic: containers are ordered, tie
//! breaks go to the smallest label, and every rewrite is recorded in a trace
//! that can be replayed and verified independently.

pub mod catalog;
pub mod classify;
pub mod dot;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod iso;
pub mod normalize;
pub mod ops;
pub mod oracle;
pub mod reduce;

pub use catalog::{catalog_entry, forbidden_catalog};
pub use classify::{
    classify, derive_forbidden_minor, easy_path_to, hgamma4_only_analysis, match_forbidden,
    undirected_conditions, verify_certificate, Certificate, Verdict, VerdictKind,
};
pub use error::{Error, Result};
pub use format::{parse, serialize};
pub use hypergraph::{
    eid, from_directed_graph, is_cycle, vid, Arc, Edge, EdgeId, Hypergraph, Path,
    ValidationReport, VertexId, Violation, ViolationCode,
};
pub use iso::{are_isomorphic, canonical_key, IsoWitness};
pub use normalize::{is_normal, normality_violations, normalize, NormalityViolations};
pub use ops::{
    backward_contract, contract_path, cut_edge, decompose_range, delete_edge, delete_set,
    delete_vertex, forward_contract, is_ideally_closed, remove_vertex_from_source, replay,
    separate_source, separate_source_of_edge, star_condition, steps_from_log, steps_to_log,
    MixedSet, Operation, PathContraction, Trace,
};
pub use oracle::{
    enumerate_directed_graphs, enumerate_exact, enumerate_hypergraphs, minor_search,
    minor_search_catalog, minor_search_forbidden, parse_budget, MinorFound, SearchBudget,
};
pub use reduce::{
    easy_edge_set, find_easy_cycle, find_quasisink_edge, is_closed_under_range_exits,
    is_closed_under_source_entries, is_reduced, is_simple_quasisink, reduce, ReduceOutcome,
    ReductionStep,
};
