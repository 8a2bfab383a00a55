//! Easy edges, easy cycles, simple quasisinks, and the reduction procedure.
//!
//! Reduction cuts edge sets whose removal does not change nuclearity of the
//! associated algebra: easy edge sets, easy cycles, and edges ending in a
//! simple quasisink. Interleaved edge deletions keep the hypergraph normal
//! at every loop head. The loop terminates because each iteration either
//! cuts an edge with nonempty range or deletes an edge.

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, Path, VertexId};
use crate::normalize::{is_normal, normalize};
use crate::ops::{cut_edge, remove_vertex_from_source, Operation, Trace};
use std::collections::BTreeSet;

/// One branch taken by the reduction loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    EasyEdgeSetCut {
        generator: EdgeId,
        edges: BTreeSet<EdgeId>,
    },
    EasyCycleCut {
        cycle: Vec<EdgeId>,
    },
    QuasisinkCut {
        edge: EdgeId,
        vertex: VertexId,
    },
    LoneEmptyEdgeDelete {
        edge: EdgeId,
    },
}

/// The backward closure of `f0`: all edges that start a path ending in `f0`,
/// including `f0` itself.
fn backward_closure(h: &Hypergraph, f0: &EdgeId) -> BTreeSet<EdgeId> {
    let mut closure = BTreeSet::from([f0.clone()]);
    let mut queue = vec![f0.clone()];
    while let Some(g) = queue.pop() {
        for (p, edge) in h.edges() {
            if closure.contains(p) {
                continue;
            }
            if edge.range.intersection(h.source(&g)).next().is_some() {
                closure.insert(p.clone());
                queue.push(p.clone());
            }
        }
    }
    closure
}

/// The easy edge set generated by `f0`, when `f0` is easy: the backward
/// closure in which every member has singleton source and range.
pub fn easy_edge_set(h: &Hypergraph, f0: &EdgeId) -> Result<Option<BTreeSet<EdgeId>>> {
    if !h.has_edge(f0) {
        return Err(Error::UnknownEdge(f0.clone()));
    }
    let closure = backward_closure(h, f0);
    let easy = closure
        .iter()
        .all(|f| h.source(f).len() == 1 && h.range(f).len() == 1);
    Ok(easy.then_some(closure))
}

fn first_easy_edge(h: &Hypergraph) -> Option<(EdgeId, BTreeSet<EdgeId>)> {
    for (f, _) in h.edges() {
        if let Some(set) = easy_edge_set(h, f).expect("edge exists") {
            return Some((f.clone(), set));
        }
    }
    None
}

/// Searches for an easy cycle: a cycle of singleton-range edges whose range
/// vertices each have exactly one incoming and one outgoing edge. The walk
/// from each candidate start edge is forced, so the smallest starting edge
/// id gives a deterministic result.
pub fn find_easy_cycle(h: &Hypergraph) -> Option<Path> {
    'starts: for (start, _) in h.edges() {
        let mut seq: Vec<EdgeId> = Vec::new();
        let mut current = start.clone();
        for _ in 0..=h.edge_count() {
            let range = h.range(&current);
            if range.len() != 1 {
                continue 'starts;
            }
            let w = range.first().expect("singleton");
            let incoming: Vec<&EdgeId> = h.edges_into(w).collect();
            if incoming.len() != 1 || incoming[0] != &current {
                continue 'starts;
            }
            let outgoing: Vec<&EdgeId> = h.edges_from(w).collect();
            if outgoing.len() != 1 {
                continue 'starts;
            }
            let next = outgoing[0].clone();
            seq.push(current);
            if next == *start {
                return Some(Path::new(h, seq).expect("walk follows links"));
            }
            if seq.contains(&next) {
                continue 'starts;
            }
            current = next;
        }
    }
    None
}

/// A vertex is a simple quasisink when it has at most one outgoing edge,
/// that edge (if any) has empty range, and at most one edge ranges into it.
pub fn is_simple_quasisink(h: &Hypergraph, w: &VertexId) -> Result<bool> {
    if !h.has_vertex(w) {
        return Err(Error::UnknownVertex(w.clone()));
    }
    let outgoing: Vec<&EdgeId> = h.edges_from(w).collect();
    if outgoing.len() > 1 {
        return Ok(false);
    }
    if let Some(e) = outgoing.first() {
        if !h.range(e).is_empty() {
            return Ok(false);
        }
    }
    Ok(h.edges_into(w).count() <= 1)
}

/// The smallest edge ending in a simple quasisink, with that vertex.
pub fn find_quasisink_edge(h: &Hypergraph) -> Option<(EdgeId, VertexId)> {
    for (f, edge) in h.edges() {
        if edge.range.len() != 1 {
            continue;
        }
        let w = edge.range.first().expect("singleton");
        if is_simple_quasisink(h, w).expect("vertex exists") {
            return Some((f.clone(), w.clone()));
        }
    }
    None
}

pub fn is_closed_under_source_entries(h: &Hypergraph, set: &BTreeSet<EdgeId>) -> Result<bool> {
    for f in set {
        if !h.has_edge(f) {
            return Err(Error::UnknownEdge(f.clone()));
        }
    }
    for f in set {
        for (e, edge) in h.edges() {
            if h.source(f).intersection(&edge.range).next().is_some() && !set.contains(e) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_closed_under_range_exits(h: &Hypergraph, set: &BTreeSet<EdgeId>) -> Result<bool> {
    for f in set {
        if !h.has_edge(f) {
            return Err(Error::UnknownEdge(f.clone()));
        }
    }
    for f in set {
        for (e, edge) in h.edges() {
            if h.range(f).intersection(&edge.source).next().is_some() && !set.contains(e) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reduced: normal, no easy edge, no easy cycle, and no edge ending in a
/// simple quasisink.
pub fn is_reduced(h: &Hypergraph) -> bool {
    is_normal(h)
        && first_easy_edge(h).is_none()
        && find_easy_cycle(h).is_none()
        && find_quasisink_edge(h).is_none()
}

/// The smallest edge with empty range sharing no source vertex with any
/// other edge; deleting it keeps the algebra unchanged.
fn lone_empty_edge(h: &Hypergraph) -> Option<EdgeId> {
    'edges: for (f, edge) in h.edges() {
        if !edge.range.is_empty() {
            continue;
        }
        for (e, other) in h.edges() {
            if e != f && other.source.intersection(&edge.source).next().is_some() {
                continue 'edges;
            }
        }
        return Some(f.clone());
    }
    None
}

fn delete_lone_edge(h: &mut Hypergraph, f: &EdgeId, steps: &mut Vec<Operation>) {
    let source: Vec<VertexId> = h.source(f).iter().cloned().collect();
    for w in source {
        *h = remove_vertex_from_source(h, f, &w).expect("lone edge removal guards hold");
        steps.push(Operation::RemoveVertexFromSource {
            edge: f.clone(),
            vertex: w,
        });
    }
}

/// Cutting can leave an edge violating normality condition (2); the pending
/// deletions restore it before the next loop head.
fn drain_lone_edges(
    h: &mut Hypergraph,
    steps: &mut Vec<Operation>,
    taken: &mut Vec<ReductionStep>,
) {
    while let Some(f) = lone_empty_edge(h) {
        taken.push(ReductionStep::LoneEmptyEdgeDelete { edge: f.clone() });
        delete_lone_edge(h, &f, steps);
    }
}

/// Result of the reduction procedure.
#[derive(Debug, Clone)]
pub struct ReduceOutcome {
    pub result: Hypergraph,
    pub trace: Trace,
    pub steps_taken: Vec<ReductionStep>,
    /// (edges with nonempty range, total edges) before and after each loop
    /// iteration; strictly lexicographically decreasing.
    pub measures: Vec<((usize, usize), (usize, usize))>,
}

fn measure(h: &Hypergraph) -> (usize, usize) {
    let ranged = h.edges().filter(|(_, e)| !e.range.is_empty()).count();
    (ranged, h.edge_count())
}

pub fn reduce(h: &Hypergraph) -> ReduceOutcome {
    let normalized = normalize(h);
    let mut current = normalized.result;
    let mut steps = normalized.trace.steps;
    let mut taken = Vec::new();
    let mut measures = Vec::new();

    loop {
        assert!(is_normal(&current), "reduction keeps the hypergraph normal");
        let before = measure(&current);
        if let Some((generator, set)) = first_easy_edge(&current) {
            for f in &set {
                current = cut_edge(&current, f).expect("edge exists");
                steps.push(Operation::CutEdge { edge: f.clone() });
            }
            taken.push(ReductionStep::EasyEdgeSetCut {
                generator,
                edges: set,
            });
            drain_lone_edges(&mut current, &mut steps, &mut taken);
        } else if let Some(cycle) = find_easy_cycle(&current) {
            for f in cycle.edges() {
                current = cut_edge(&current, f).expect("edge exists");
                steps.push(Operation::CutEdge { edge: f.clone() });
            }
            taken.push(ReductionStep::EasyCycleCut {
                cycle: cycle.edges().to_vec(),
            });
            drain_lone_edges(&mut current, &mut steps, &mut taken);
        } else if let Some((f, w)) = find_quasisink_edge(&current) {
            // The quasisink may have one outgoing empty-range edge; remove
            // the vertex from its source first so the quasisink becomes a
            // plain sink.
            let out_edge = current.edges_from(&w).next().cloned();
            if let Some(out_edge) = out_edge {
                current = remove_vertex_from_source(&current, &out_edge, &w)
                    .expect("quasisink outgoing edge removal guards hold");
                steps.push(Operation::RemoveVertexFromSource {
                    edge: out_edge,
                    vertex: w.clone(),
                });
            }
            current = cut_edge(&current, &f).expect("edge exists");
            steps.push(Operation::CutEdge { edge: f.clone() });
            taken.push(ReductionStep::QuasisinkCut { edge: f, vertex: w });
            drain_lone_edges(&mut current, &mut steps, &mut taken);
        } else if let Some(f) = lone_empty_edge(&current) {
            taken.push(ReductionStep::LoneEmptyEdgeDelete { edge: f.clone() });
            delete_lone_edge(&mut current, &f, &mut steps);
        } else {
            break;
        }
        let after = measure(&current);
        assert!(
            after < before,
            "reduction measure must strictly decrease ({before:?} -> {after:?})"
        );
        measures.push((before, after));
    }
    debug_assert!(is_reduced(&current));
    ReduceOutcome {
        result: current,
        trace: Trace {
            start: h.clone(),
            steps,
        },
        steps_taken: taken,
        measures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::forbidden_catalog;
    use crate::hypergraph::{eid, vid};

    fn easy_edge_figure() -> Hypergraph {
        // Source ellipse {a, b} feeding the top vertex c through a wide edge;
        // a chain t -> a -> b -> c of unit edges runs alongside it. The chain
        // edges form the easy edge set generated by f.
        Hypergraph::from_parts(
            &[],
            &[
                ("tail", &["t"], &["a"]),
                ("arc", &["a"], &["b"]),
                ("f", &["b"], &["c"]),
                ("wide", &["a", "b"], &["c"]),
                ("top", &["t"], &["c"]),
            ],
        )
    }

    #[test]
    fn easy_edge_set_is_backward_closure() {
        let h = easy_edge_figure();
        let set = easy_edge_set(&h, &eid("f")).unwrap().expect("f is easy");
        assert_eq!(set, BTreeSet::from([eid("tail"), eid("arc"), eid("f")]));
        // The wide edge is not easy.
        assert!(easy_edge_set(&h, &eid("wide")).unwrap().is_none());
        // Easy edge sets are closed under source entries.
        assert!(is_closed_under_source_entries(&h, &set).unwrap());
    }

    #[test]
    fn g4_edges_are_not_easy() {
        let g4 = &forbidden_catalog()[3];
        assert!(easy_edge_set(g4, &eid("e")).unwrap().is_none());
    }

    #[test]
    fn isolated_unit_edge_is_easy() {
        let h = Hypergraph::from_parts(&[], &[("f", &["v"], &["w"])]);
        assert_eq!(
            easy_edge_set(&h, &eid("f")).unwrap(),
            Some(BTreeSet::from([eid("f")]))
        );
    }

    #[test]
    fn easy_cycle_found_and_spoiled() {
        // Two boxes of two vertices each, f1 and f2 running between them.
        let ring = Hypergraph::from_parts(
            &[],
            &[
                ("f1", &["a1", "a2"], &["b1"]),
                ("f2", &["b1", "b2"], &["a1"]),
            ],
        );
        let cycle = find_easy_cycle(&ring).expect("easy cycle");
        assert_eq!(cycle.edges(), &[eid("f1"), eid("f2")]);
        assert!(is_closed_under_range_exits(
            &ring,
            &cycle.edges().iter().cloned().collect()
        )
        .unwrap());

        // An extra edge into b1 gives the range vertex two incoming edges.
        let spoiled = Hypergraph::from_parts(
            &[],
            &[
                ("f1", &["a1", "a2"], &["b1"]),
                ("f2", &["b1", "b2"], &["a1"]),
                ("g", &["x"], &["b1"]),
            ],
        );
        assert!(find_easy_cycle(&spoiled).is_none());
    }

    #[test]
    fn acyclic_has_no_easy_cycle() {
        let h = Hypergraph::from_parts(&[], &[("e", &["v"], &["w"])]);
        assert!(find_easy_cycle(&h).is_none());
    }

    #[test]
    fn quasisink_detection() {
        // w with one incoming edge and one empty-range outgoing edge.
        let good = Hypergraph::from_parts(
            &[],
            &[("in", &["v"], &["w"]), ("out", &["w", "u"], &[])],
        );
        assert!(is_simple_quasisink(&good, &vid("w")).unwrap());
        assert_eq!(
            find_quasisink_edge(&good),
            Some((eid("in"), vid("w")))
        );

        // Two incoming edges: not simple.
        let two_in = Hypergraph::from_parts(
            &[],
            &[("in1", &["v"], &["w"]), ("in2", &["v", "u"], &["w"])],
        );
        assert!(!is_simple_quasisink(&two_in, &vid("w")).unwrap());

        // G4's w has two incoming edges.
        let g4 = &forbidden_catalog()[3];
        assert!(find_quasisink_edge(g4).is_none());
    }

    #[test]
    fn full_edge_set_is_closed_both_ways() {
        let h = easy_edge_figure();
        let all: BTreeSet<EdgeId> = h.edge_ids().cloned().collect();
        assert!(is_closed_under_source_entries(&h, &all).unwrap());
        assert!(is_closed_under_range_exits(&h, &all).unwrap());
    }

    #[test]
    fn reduced_inputs_get_empty_traces() {
        let g4 = &forbidden_catalog()[3];
        let out = reduce(g4);
        assert!(out.trace.is_empty());
        assert!(out.steps_taken.is_empty());
        assert_eq!(&out.result, g4);
    }

    #[test]
    fn catalog_is_reduced() {
        for g in forbidden_catalog() {
            assert!(is_reduced(&g));
        }
    }

    #[test]
    fn edgeless_is_reduced() {
        assert!(is_reduced(&Hypergraph::from_parts(&["v"], &[])));
    }

    #[test]
    fn wide_loop_is_reduced_after_normalization() {
        let h = Hypergraph::from_parts(&[], &[("e", &["v", "w"], &["v", "w"])]);
        let out = reduce(&h);
        let expected = Hypergraph::from_parts(
            &[],
            &[("e@v", &["v", "w"], &["v"]), ("e@w", &["v", "w"], &["w"])],
        );
        assert_eq!(out.result, expected);
        assert!(is_reduced(&out.result));
    }

    #[test]
    fn five_vertex_example_reduces_to_crossing_pair() {
        let h = Hypergraph::from_parts(
            &[],
            &[
                ("e", &["v1", "v2"], &["w1", "w2"]),
                ("f", &["w1"], &["u"]),
            ],
        );
        let out = reduce(&h);
        let expected = Hypergraph::from_parts(
            &["w1", "w2"],
            &[("e@w1", &["v1", "v2"], &[]), ("e@w2", &["v1", "v2"], &[])],
        );
        assert_eq!(out.result, expected);
        assert!(out
            .steps_taken
            .iter()
            .all(|s| matches!(s, ReductionStep::QuasisinkCut { .. })));
        assert_eq!(out.trace.replay().unwrap(), out.result);
    }

    #[test]
    fn reduce_is_a_fixpoint() {
        let h = Hypergraph::from_parts(
            &[],
            &[
                ("e", &["v1", "v2"], &["w1", "w2"]),
                ("f", &["w1"], &["u"]),
            ],
        );
        let once = reduce(&h);
        let twice = reduce(&once.result);
        assert_eq!(once.result, twice.result);
        assert!(twice.steps_taken.is_empty());
    }

    #[test]
    fn directed_graph_reduces_to_empty_ranges() {
        // A 2-cycle with an extra chord vertex.
        let h = Hypergraph::from_parts(
            &[],
            &[
                ("a", &["v"], &["w"]),
                ("b", &["w"], &["v"]),
                ("c", &["v"], &["u"]),
            ],
        );
        let out = reduce(&h);
        for (_, edge) in out.result.edges() {
            assert!(edge.range.is_empty());
            assert_eq!(edge.source.len(), 1);
        }
    }
}
