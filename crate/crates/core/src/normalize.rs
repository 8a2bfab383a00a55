//! Normality and the normalization procedure.
//!
//! A hypergraph is *normal* when (1) every range has at most one vertex,
//! (2) every edge shares a source vertex with another edge or has its
//! nonempty range inside its own source, and (3) every pair of distinct
//! edges meeting in exactly one source vertex either consists of two
//! singleton-source edges or is dominated by a strictly larger intersection.
//!
//! Normalization decomposes all ranges, then repeatedly separates sources
//! at violating pairs and removes or backward-contracts lonely edges. The
//! associated algebra only changes up to Morita equivalence, which is why
//! every classification below happens on normalized hypergraphs.

use crate::error::Result;
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::ops::{
    backward_contract, decompose_range, remove_vertex_from_source, separate_source,
    star_condition, Operation, Trace,
};
use std::collections::BTreeSet;

/// The three violation classes of the normality conditions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NormalityViolations {
    /// Edges violating condition (2): no shared source vertex and no
    /// nonempty range inside the own source.
    pub s1: BTreeSet<EdgeId>,
    /// Ordered pairs of distinct edges violating condition (3).
    pub s2: BTreeSet<(EdgeId, EdgeId)>,
    /// Edges with more than one range vertex.
    pub range_violations: BTreeSet<EdgeId>,
}

impl NormalityViolations {
    pub fn is_empty(&self) -> bool {
        self.s1.is_empty() && self.s2.is_empty() && self.range_violations.is_empty()
    }

    pub fn n1(&self) -> usize {
        self.s1.len()
    }

    pub fn n2(&self) -> usize {
        self.s2.len()
    }
}

fn violates_condition_two(h: &Hypergraph, e: &EdgeId) -> bool {
    let edge = &h.edge(e).expect("present");
    let shares = h
        .edges()
        .any(|(id, other)| id != e && other.source.intersection(&edge.source).next().is_some());
    if shares {
        return false;
    }
    let range_inside = !edge.range.is_empty() && edge.range.is_subset(&edge.source);
    !range_inside
}

fn violates_condition_three(h: &Hypergraph, e: &EdgeId, f: &EdgeId) -> bool {
    let se = h.source(e);
    let sf = h.source(f);
    let meet: BTreeSet<&VertexId> = se.intersection(sf).collect();
    if meet.len() != 1 {
        return false;
    }
    if se.len() == 1 && sf.len() == 1 {
        return false;
    }
    let meet_size = 1usize;
    for (g, other) in h.edges() {
        if g == e {
            continue;
        }
        let with_g: BTreeSet<&VertexId> = se.intersection(&other.source).collect();
        if with_g.len() > meet_size && meet.iter().all(|v| with_g.contains(*v)) {
            return false;
        }
    }
    true
}

pub fn normality_violations(h: &Hypergraph) -> NormalityViolations {
    let mut v = NormalityViolations::default();
    for (id, edge) in h.edges() {
        if edge.range.len() > 1 {
            v.range_violations.insert(id.clone());
        }
        if violates_condition_two(h, id) {
            v.s1.insert(id.clone());
        }
    }
    for (e, _) in h.edges() {
        for (f, _) in h.edges() {
            if e != f && violates_condition_three(h, e, f) {
                v.s2.insert((e.clone(), f.clone()));
            }
        }
    }
    v
}

pub fn is_normal(h: &Hypergraph) -> bool {
    normality_violations(h).is_empty()
}

/// Result of normalization: the normal hypergraph, the replayable trace,
/// and the per-step termination measures (asserted strictly monotone).
#[derive(Debug, Clone)]
pub struct NormalizeOutcome {
    pub result: Hypergraph,
    pub trace: Trace,
    /// `n2` before and after each source separation step.
    pub separation_n2: Vec<(usize, usize)>,
    /// Vertex count before and after each backward contraction.
    pub contraction_vertices: Vec<(usize, usize)>,
}

fn decompose_all(h: &mut Hypergraph, steps: &mut Vec<Operation>) {
    let wide: Vec<EdgeId> = h
        .edges()
        .filter(|(_, e)| e.range.len() > 1)
        .map(|(id, _)| id.clone())
        .collect();
    for f in wide {
        let (next, fresh) = decompose_range(h, &f).expect("nonempty range");
        steps.push(Operation::DecomposeRange { edge: f, fresh });
        *h = next;
    }
}

/// Deletes an edge with empty range and no source sharing by removing its
/// source vertices one at a time; the last removal deletes the edge.
fn delete_lonely_edge(h: &mut Hypergraph, e: &EdgeId, steps: &mut Vec<Operation>) -> Result<()> {
    let source: Vec<VertexId> = h.source(e).iter().cloned().collect();
    for w in source {
        *h = remove_vertex_from_source(h, e, &w)?;
        steps.push(Operation::RemoveVertexFromSource {
            edge: e.clone(),
            vertex: w,
        });
    }
    Ok(())
}

pub fn normalize(h: &Hypergraph) -> NormalizeOutcome {
    let start = h.clone();
    let mut current = h.clone();
    let mut steps = Vec::new();
    let mut separation_n2 = Vec::new();
    let mut contraction_vertices = Vec::new();

    decompose_all(&mut current, &mut steps);
    loop {
        let violations = normality_violations(&current);
        if let Some((e, f)) = violations.s2.iter().next().cloned() {
            let meet: BTreeSet<VertexId> = current
                .source(&e)
                .intersection(current.source(&f))
                .cloned()
                .collect();
            let w = meet.first().expect("violating pairs meet in one vertex").clone();
            let set = BTreeSet::from([e.clone()]);
            assert!(
                star_condition(&current, &set, &w).expect("guards hold"),
                "violating pair must satisfy the separation condition"
            );
            let n2_before = violations.n2();
            let (next, fresh) = separate_source(&current, &set, &w)
                .expect("separation at a violating pair is strict");
            steps.push(Operation::SeparateSource {
                edges: set,
                vertex: w,
                fresh: Some(fresh),
            });
            current = next;
            let n2_after = normality_violations(&current).n2();
            assert!(
                n2_after < n2_before,
                "source separation must strictly decrease n2 ({n2_before} -> {n2_after})"
            );
            separation_n2.push((n2_before, n2_after));
            continue;
        }
        // No violating pair remains. Separations may have widened ranges of
        // edges pointing at the separated vertices; decompose them before
        // touching condition (2). Decomposition only copies edges with their
        // sources, so it cannot create a violating pair.
        decompose_all(&mut current, &mut steps);
        let violations = normality_violations(&current);
        assert!(
            violations.s2.is_empty(),
            "range decomposition must not create violating pairs"
        );
        if let Some(e) = violations.s1.first().cloned() {
            if current.range(&e).is_empty() {
                delete_lonely_edge(&mut current, &e, &mut steps)
                    .expect("lonely empty-range edge is removable");
            } else {
                let before = current.vertex_count();
                current = backward_contract(&current, &e)
                    .expect("backward contraction guards hold at this site");
                steps.push(Operation::BackwardContract { edge: e });
                let after = current.vertex_count();
                assert!(after < before, "backward contraction must drop a vertex");
                contraction_vertices.push((before, after));
            }
            decompose_all(&mut current, &mut steps);
            assert!(
                normality_violations(&current).s2.is_empty(),
                "condition (2) repair must not create violating pairs"
            );
        } else {
            break;
        }
    }
    debug_assert!(is_normal(&current));
    NormalizeOutcome {
        result: current,
        trace: Trace { start, steps },
        separation_n2,
        contraction_vertices,
    }
}
