//! The minor operations and replayable traces.
//!
//! Seven primitive rewrites generate the minor relation: vertex deletion,
//! edge deletion, forward and backward edge contraction, edge cutting,
//! source separation and range decomposition. Two further guarded rewrites
//! (removing a vertex from the source of an edge, deleting an ideally closed
//! set) and two composites (separating the source of an edge, contracting a
//! path) are built on top of them.
//!
//! Every operation is a guarded pure function: it either returns a new
//! hypergraph or an error naming the violated precondition. Applied
//! operations are recorded as [`Operation`] values; an ordered list of them
//! together with a start hypergraph forms a [`Trace`] that can be replayed
//! step by step.

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, EdgeId, Hypergraph, Path, VertexId};
use crate::normalize::is_normal;
use std::collections::{BTreeMap, BTreeSet};

/// Deletes a vertex. Edges whose source was exactly `{v}` disappear; the
/// remaining edges lose `v` from their sources and ranges.
pub fn delete_vertex(h: &Hypergraph, v: &VertexId) -> Result<Hypergraph> {
    if !h.has_vertex(v) {
        return Err(Error::UnknownVertex(v.clone()));
    }
    let mut out = h.clone();
    out.vertices_mut().remove(v);
    out.edges_mut().retain(|_, e| e.source != BTreeSet::from([v.clone()]));
    for e in out.edges_mut().values_mut() {
        e.source.remove(v);
        e.range.remove(v);
    }
    Ok(out)
}

/// Deletes a single edge; everything else is untouched.
pub fn delete_edge(h: &Hypergraph, f: &EdgeId) -> Result<Hypergraph> {
    if !h.has_edge(f) {
        return Err(Error::UnknownEdge(f.clone()));
    }
    let mut out = h.clone();
    out.edges_mut().remove(f);
    Ok(out)
}

/// Forward contraction of `f` with `s(f) = {w}`: removes `w` and `f` and
/// rewrites every range containing `w` to `(r(e) \ {w}) ∪ r(f)`.
pub fn forward_contract(h: &Hypergraph, f: &EdgeId) -> Result<Hypergraph> {
    let edge = h.edge(f).ok_or_else(|| Error::UnknownEdge(f.clone()))?.clone();
    if edge.source.len() != 1 {
        return Err(Error::NonSingletonSource { edge: f.clone() });
    }
    let w = edge.source.first().expect("singleton").clone();
    for (id, other) in h.edges() {
        if id != f && other.source.contains(&w) {
            return Err(Error::SiblingStart {
                edge: f.clone(),
                sibling: id.clone(),
            });
        }
        // The quantifier includes f itself, which rules out w ∈ r(f).
        if other.range.contains(&w) && other.range.intersection(&edge.range).next().is_some() {
            return Err(Error::RangeOverlap {
                edge: f.clone(),
                witness: id.clone(),
            });
        }
    }
    let mut out = h.clone();
    out.vertices_mut().remove(&w);
    out.edges_mut().remove(f);
    for e in out.edges_mut().values_mut() {
        if e.range.remove(&w) {
            e.range.extend(edge.range.iter().cloned());
        }
    }
    Ok(out)
}

/// Backward contraction of `f` with `r(f) = {w}`: removes `w` and `f` and
/// replaces `w` by `s(f)` in every other source and range.
pub fn backward_contract(h: &Hypergraph, f: &EdgeId) -> Result<Hypergraph> {
    let edge = h.edge(f).ok_or_else(|| Error::UnknownEdge(f.clone()))?.clone();
    if edge.range.is_empty() {
        return Err(Error::EmptyRange { edge: f.clone() });
    }
    if edge.range.len() != 1 {
        return Err(Error::NonSingletonRange { edge: f.clone() });
    }
    let w = edge.range.first().expect("singleton").clone();
    for (id, other) in h.edges() {
        if id != f && other.source.intersection(&edge.source).next().is_some() {
            return Err(Error::SiblingStart {
                edge: f.clone(),
                sibling: id.clone(),
            });
        }
        // Includes f itself, which rules out w ∈ s(f).
        if other.range.contains(&w) && other.range.intersection(&edge.source).next().is_some() {
            return Err(Error::RangeOverlap {
                edge: f.clone(),
                witness: id.clone(),
            });
        }
    }
    let mut out = h.clone();
    out.vertices_mut().remove(&w);
    out.edges_mut().remove(f);
    for e in out.edges_mut().values_mut() {
        if e.range.remove(&w) {
            e.range.extend(edge.source.iter().cloned());
        }
        if e.source.remove(&w) {
            e.source.extend(edge.source.iter().cloned());
        }
    }
    Ok(out)
}

/// Cuts an edge: its range becomes empty. Idempotent.
pub fn cut_edge(h: &Hypergraph, f: &EdgeId) -> Result<Hypergraph> {
    if !h.has_edge(f) {
        return Err(Error::UnknownEdge(f.clone()));
    }
    let mut out = h.clone();
    out.edge_mut(f).expect("checked").range.clear();
    Ok(out)
}

fn starters(h: &Hypergraph, w: &VertexId) -> BTreeSet<EdgeId> {
    h.edges_from(w).cloned().collect()
}

/// Source separation of a nonempty strict subset `F` of the edges starting
/// from `w`. A fresh vertex `w'` replaces `w` in the sources of `F` and is
/// appended to every range containing `w`. Returns the fresh vertex.
pub fn separate_source(
    h: &Hypergraph,
    edges: &BTreeSet<EdgeId>,
    w: &VertexId,
) -> Result<(Hypergraph, VertexId)> {
    if !h.has_vertex(w) {
        return Err(Error::UnknownVertex(w.clone()));
    }
    if edges.is_empty() {
        return Err(Error::EmptySeparationSet { vertex: w.clone() });
    }
    for f in edges {
        let edge = h.edge(f).ok_or_else(|| Error::UnknownEdge(f.clone()))?;
        if !edge.source.contains(w) {
            return Err(Error::VertexNotInSource {
                edge: f.clone(),
                vertex: w.clone(),
            });
        }
    }
    if *edges == starters(h, w) {
        return Err(Error::SeparationNotStrict { vertex: w.clone() });
    }
    let fresh = h.fresh_vertex(w);
    let mut out = h.clone();
    out.vertices_mut().insert(fresh.clone());
    let member: BTreeSet<&EdgeId> = edges.iter().collect();
    let mut ids: Vec<EdgeId> = out.edge_ids().cloned().collect();
    ids.sort_unstable();
    for id in ids {
        let e = out.edge_mut(&id).expect("present");
        if e.range.contains(w) {
            e.range.insert(fresh.clone());
        }
        if member.contains(&id) {
            e.source.remove(w);
            e.source.insert(fresh.clone());
        }
    }
    Ok((out, fresh))
}

/// The condition under which source separation leaves the associated algebra
/// unchanged on the nose: every edge outside `F` starting from `w` meets each
/// member of `F` in exactly `{w}`.
pub fn star_condition(h: &Hypergraph, edges: &BTreeSet<EdgeId>, w: &VertexId) -> Result<bool> {
    if !h.has_vertex(w) {
        return Err(Error::UnknownVertex(w.clone()));
    }
    if edges.is_empty() {
        return Err(Error::EmptySeparationSet { vertex: w.clone() });
    }
    for f in edges {
        let edge = h.edge(f).ok_or_else(|| Error::UnknownEdge(f.clone()))?;
        if !edge.source.contains(w) {
            return Err(Error::VertexNotInSource {
                edge: f.clone(),
                vertex: w.clone(),
            });
        }
    }
    let singleton = BTreeSet::from([w.clone()]);
    for (g, other) in h.edges() {
        if edges.contains(g) || !other.source.contains(w) {
            continue;
        }
        for f in edges {
            let meet: BTreeSet<VertexId> = h
                .source(f)
                .intersection(&other.source)
                .cloned()
                .collect();
            if meet != singleton {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Range decomposition: replaces `f` by one edge per range vertex `v`, each
/// with source `s(f)` and range `{v}`. Returns the new edge ids in range
/// order.
pub fn decompose_range(h: &Hypergraph, f: &EdgeId) -> Result<(Hypergraph, Vec<EdgeId>)> {
    let edge = h.edge(f).ok_or_else(|| Error::UnknownEdge(f.clone()))?.clone();
    if edge.range.is_empty() {
        return Err(Error::EmptyRange { edge: f.clone() });
    }
    let mut out = h.clone();
    out.edges_mut().remove(f);
    let mut fresh = Vec::new();
    for v in &edge.range {
        let id = out.fresh_edge(f, v);
        out.edges_mut().insert(
            id.clone(),
            Edge {
                source: edge.source.clone(),
                range: BTreeSet::from([v.clone()]),
            },
        );
        fresh.push(id);
    }
    Ok((out, fresh))
}

/// Removes `w` from the source of `f`, deleting `f` when its source was
/// exactly `{w}`. Requires `r(f) = ∅` and that `f` is the only edge starting
/// from `w`; under these guards the associated algebra is unchanged.
pub fn remove_vertex_from_source(h: &Hypergraph, f: &EdgeId, w: &VertexId) -> Result<Hypergraph> {
    let edge = h.edge(f).ok_or_else(|| Error::UnknownEdge(f.clone()))?;
    if !edge.source.contains(w) {
        return Err(Error::VertexNotInSource {
            edge: f.clone(),
            vertex: w.clone(),
        });
    }
    if !edge.range.is_empty() {
        return Err(Error::RangeNotEmpty { edge: f.clone() });
    }
    for (id, other) in h.edges() {
        if id != f && other.source.contains(w) {
            return Err(Error::NotOnlyEdgeFrom {
                vertex: w.clone(),
                other: id.clone(),
            });
        }
    }
    let mut out = h.clone();
    {
        let e = out.edge_mut(f).expect("present");
        e.source.remove(w);
        if e.source.is_empty() {
            out.edges_mut().remove(f);
        }
    }
    Ok(out)
}

/// A set of vertices and edges to be deleted or tested together.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedSet {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl MixedSet {
    pub fn new(vertices: BTreeSet<VertexId>, edges: BTreeSet<EdgeId>) -> Self {
        MixedSet { vertices, edges }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    fn check_members(&self, h: &Hypergraph) -> Result<()> {
        for v in &self.vertices {
            if !h.has_vertex(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        for e in &self.edges {
            if !h.has_edge(e) {
                return Err(Error::UnknownEdge(e.clone()));
            }
        }
        Ok(())
    }
}

/// Whether `S` is ideally closed: edges in `S` keep their ranges inside `S`,
/// edges forced by their source or nonempty range lying in `S` are in `S`,
/// and non-sinks all of whose outgoing edges are in `S` are in `S`.
pub fn is_ideally_closed(h: &Hypergraph, set: &MixedSet) -> Result<bool> {
    set.check_members(h)?;
    for e in &set.edges {
        if !h.range(e).is_subset(&set.vertices) {
            return Ok(false);
        }
    }
    for (id, edge) in h.edges() {
        let forced = edge.source.is_subset(&set.vertices)
            || (!edge.range.is_empty() && edge.range.is_subset(&set.vertices));
        if forced && !set.edges.contains(id) {
            return Ok(false);
        }
    }
    for v in h.vertices() {
        if h.is_sink(v)? {
            continue;
        }
        let all_out_in = h.edges_from(v).all(|e| set.edges.contains(e));
        if all_out_in && !set.vertices.contains(v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deletes all members of `S` by successive edge and vertex deletions. The
/// result does not depend on the order: an edge survives exactly when it is
/// not in `S` and keeps at least one source vertex.
pub fn delete_set(h: &Hypergraph, set: &MixedSet) -> Result<Hypergraph> {
    set.check_members(h)?;
    let mut out = h.clone();
    for e in &set.edges {
        out = delete_edge(&out, e)?;
    }
    for v in &set.vertices {
        out = delete_vertex(&out, v)?;
    }
    Ok(out)
}

/// Separates the source of `f` at every vertex shared with another edge,
/// per-vertex in label order. Afterwards `s(f)` is disjoint from every other
/// source. Returns the applied separation steps.
pub fn separate_source_of_edge(
    h: &Hypergraph,
    f: &EdgeId,
) -> Result<(Hypergraph, Vec<Operation>)> {
    let edge = h.edge(f).ok_or_else(|| Error::UnknownEdge(f.clone()))?;
    let original: Vec<VertexId> = edge.source.iter().cloned().collect();
    let mut out = h.clone();
    let mut steps = Vec::new();
    let singleton = BTreeSet::from([f.clone()]);
    for w in original {
        let shared = out
            .edges()
            .any(|(id, e)| id != f && e.source.contains(&w));
        if !shared {
            continue;
        }
        let (next, fresh) = separate_source(&out, &singleton, &w)?;
        steps.push(Operation::SeparateSource {
            edges: singleton.clone(),
            vertex: w.clone(),
            fresh: Some(fresh),
        });
        out = next;
    }
    Ok((out, steps))
}

/// Result of a path contraction: the rewritten hypergraph, the primitive
/// operation sequence realizing it, and the id changes forced by the
/// intermediate range decompositions.
#[derive(Debug, Clone)]
pub struct PathContraction {
    pub result: Hypergraph,
    pub steps: Vec<Operation>,
    /// Maps pre-contraction edge ids to their ids in `result`, for edges
    /// that were renamed. Edges absent from the map kept their id.
    pub renames: BTreeMap<EdgeId, EdgeId>,
}

impl PathContraction {
    /// Current id of `e` after the contraction.
    pub fn current(&self, e: &EdgeId) -> EdgeId {
        self.renames.get(e).cloned().unwrap_or_else(|| e.clone())
    }
}

fn bump_rename(renames: &mut BTreeMap<EdgeId, EdgeId>, old: &EdgeId, new: EdgeId) {
    for v in renames.values_mut() {
        if v == old {
            *v = new;
            return;
        }
    }
    renames.insert(old.clone(), new);
}

/// Contracts the path `f_1 … f_n` in a normal host: removes `f_2 … f_n` and
/// gives `f_1` the range of `f_n`. Requires singleton sources from the
/// second edge on. Interior closed subpaths are dropped first and their
/// edges deleted at the end.
///
/// The realization works level by level from the far end: separate the
/// source of the contracted edge, decompose the ranges pointing at it, drop
/// the superfluous copies and forward-contract. Range decompositions rename
/// edges, so the surviving first edge ends up under a derived id; consult
/// [`PathContraction::renames`].
pub fn contract_path(h: &Hypergraph, path: &Path) -> Result<PathContraction> {
    if !is_normal(h) {
        return Err(Error::HostNotNormal);
    }
    let edges = path.edges();
    for e in edges {
        if !h.has_edge(e) {
            return Err(Error::UnknownEdge(e.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for e in edges {
        if !seen.insert(e.clone()) {
            return Err(Error::DuplicateId(e.to_string()));
        }
    }
    for e in &edges[1..] {
        if h.source(e).len() != 1 {
            return Err(Error::PathSourceNotSingleton { edge: e.clone() });
        }
    }

    let first = edges[0].clone();
    let mut contraction = PathContraction {
        result: h.clone(),
        steps: Vec::new(),
        renames: BTreeMap::new(),
    };
    if edges.len() == 1 {
        return Ok(contraction);
    }

    // Drop interior closed subpaths: kept edges never close up among
    // themselves, which the level construction below depends on.
    let mut kept: Vec<EdgeId> = Vec::new();
    let mut dropped: Vec<EdgeId> = Vec::new();
    for cand in &edges[1..] {
        let closes = kept
            .iter()
            .position(|k| h.range(cand).intersection(h.source(k)).next().is_some())
            .or_else(|| {
                // A self-loop candidate closes on its own.
                if h.range(cand).intersection(h.source(cand)).next().is_some() {
                    Some(kept.len())
                } else {
                    None
                }
            });
        match closes {
            Some(i) => {
                dropped.extend(kept.drain(i..));
                dropped.push(cand.clone());
            }
            None => kept.push(cand.clone()),
        }
    }

    // Levels run from the far end towards the first edge; each one folds the
    // last kept edge into its predecessor.
    for i in (0..kept.len()).rev() {
        let target = contraction.current(&kept[i]);
        let prev = if i == 0 {
            contraction.current(&first)
        } else {
            contraction.current(&kept[i - 1])
        };
        contract_level(&mut contraction, &target, &prev)?;
    }

    for d in &dropped {
        let cur = contraction.current(d);
        contraction.result = delete_edge(&contraction.result, &cur)?;
        contraction.steps.push(Operation::DeleteEdge { edge: cur });
    }
    Ok(contraction)
}

/// One level of path contraction: folds `target` (singleton source `{w}`)
/// into `prev`, the unique kept edge ranging into `w`.
fn contract_level(c: &mut PathContraction, target: &EdgeId, prev: &EdgeId) -> Result<()> {
    let h = &c.result;
    let w = h
        .source(target)
        .first()
        .expect("path edges have nonempty sources")
        .clone();
    debug_assert_eq!(h.source(target).len(), 1);
    if !h.range(prev).contains(&w) {
        return Err(Error::Dispatch(format!(
            "path contraction: {prev} does not range into {w}"
        )));
    }

    // Normality guarantees a sibling at w, so the separation is strict.
    let singleton = BTreeSet::from([target.clone()]);
    let (next, fresh_w) = separate_source(h, &singleton, &w).map_err(|e| match e {
        Error::SeparationNotStrict { vertex } => Error::Dispatch(format!(
            "path contraction: no sibling edge at {vertex}"
        )),
        other => other,
    })?;
    c.steps.push(Operation::SeparateSource {
        edges: singleton,
        vertex: w.clone(),
        fresh: Some(fresh_w.clone()),
    });
    c.result = next;

    // Every edge now ranging into the fresh vertex had range {w}; decompose
    // each into its w-copy and its fresh-copy.
    let members: Vec<EdgeId> = c
        .result
        .edges_into(&fresh_w)
        .cloned()
        .collect();
    let mut prev_fresh_copy = None;
    let mut to_delete = Vec::new();
    for m in &members {
        debug_assert_eq!(c.result.range(m).len(), 2);
        let (next, fresh_ids) = decompose_range(&c.result, m)?;
        c.steps.push(Operation::DecomposeRange {
            edge: m.clone(),
            fresh: fresh_ids.clone(),
        });
        c.result = next;
        let copy_w = fresh_ids
            .iter()
            .find(|id| c.result.range(id).contains(&w))
            .expect("decomposition produced the w-copy")
            .clone();
        let copy_fresh = fresh_ids
            .iter()
            .find(|id| c.result.range(id).contains(&fresh_w))
            .expect("decomposition produced the fresh copy")
            .clone();
        if m == prev {
            prev_fresh_copy = Some(copy_fresh);
            to_delete.push(copy_w);
            bump_rename(&mut c.renames, m, prev_fresh_copy.clone().expect("just set"));
        } else {
            to_delete.push(copy_fresh);
            bump_rename(&mut c.renames, m, copy_w);
        }
    }
    if prev_fresh_copy.is_none() {
        return Err(Error::Dispatch(format!(
            "path contraction: {prev} lost its range into {w}"
        )));
    }
    for id in to_delete {
        c.result = delete_edge(&c.result, &id)?;
        c.steps.push(Operation::DeleteEdge { edge: id });
    }

    c.result = forward_contract(&c.result, target)?;
    c.steps.push(Operation::ForwardContract {
        edge: target.clone(),
    });
    Ok(())
}

/// One applied minor operation together with its arguments. Fresh ids
/// created by an application are recorded so that a replay can check it
/// regenerates them exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operation {
    DeleteVertex { vertex: VertexId },
    DeleteEdge { edge: EdgeId },
    ForwardContract { edge: EdgeId },
    BackwardContract { edge: EdgeId },
    CutEdge { edge: EdgeId },
    SeparateSource {
        edges: BTreeSet<EdgeId>,
        vertex: VertexId,
        fresh: Option<VertexId>,
    },
    DecomposeRange { edge: EdgeId, fresh: Vec<EdgeId> },
    RemoveVertexFromSource { edge: EdgeId, vertex: VertexId },
    DeleteSet { set: MixedSet },
    ContractPath { edges: Vec<EdgeId> },
    SeparateSourceOfEdge { edge: EdgeId },
}

impl Operation {
    /// Applies the operation, returning the rewritten hypergraph and the
    /// operation record with fresh ids filled in.
    pub fn apply(&self, h: &Hypergraph) -> Result<(Hypergraph, Operation)> {
        match self {
            Operation::DeleteVertex { vertex } => {
                Ok((delete_vertex(h, vertex)?, self.clone()))
            }
            Operation::DeleteEdge { edge } => Ok((delete_edge(h, edge)?, self.clone())),
            Operation::ForwardContract { edge } => {
                Ok((forward_contract(h, edge)?, self.clone()))
            }
            Operation::BackwardContract { edge } => {
                Ok((backward_contract(h, edge)?, self.clone()))
            }
            Operation::CutEdge { edge } => Ok((cut_edge(h, edge)?, self.clone())),
            Operation::SeparateSource { edges, vertex, .. } => {
                let (out, fresh) = separate_source(h, edges, vertex)?;
                Ok((
                    out,
                    Operation::SeparateSource {
                        edges: edges.clone(),
                        vertex: vertex.clone(),
                        fresh: Some(fresh),
                    },
                ))
            }
            Operation::DecomposeRange { edge, .. } => {
                let (out, fresh) = decompose_range(h, edge)?;
                Ok((
                    out,
                    Operation::DecomposeRange {
                        edge: edge.clone(),
                        fresh,
                    },
                ))
            }
            Operation::RemoveVertexFromSource { edge, vertex } => Ok((
                remove_vertex_from_source(h, edge, vertex)?,
                self.clone(),
            )),
            Operation::DeleteSet { set } => Ok((delete_set(h, set)?, self.clone())),
            Operation::ContractPath { edges } => {
                let path = Path::new(h, edges.clone())?;
                let contraction = contract_path(h, &path)?;
                Ok((contraction.result, self.clone()))
            }
            Operation::SeparateSourceOfEdge { edge } => {
                let (out, _) = separate_source_of_edge(h, edge)?;
                Ok((out, self.clone()))
            }
        }
    }

    fn recorded_fresh(&self) -> Option<String> {
        match self {
            Operation::SeparateSource { fresh: Some(v), .. } => Some(v.to_string()),
            Operation::DecomposeRange { fresh, .. } if !fresh.is_empty() => Some(
                fresh
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            _ => None,
        }
    }
}

/// An ordered, replayable list of operations from a start hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub start: Hypergraph,
    pub steps: Vec<Operation>,
}

impl Trace {
    pub fn new(start: Hypergraph) -> Self {
        Trace {
            start,
            steps: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Replays every step from the start hypergraph. Fails if any guard
    /// fails or a recorded fresh id differs from the regenerated one.
    pub fn replay(&self) -> Result<Hypergraph> {
        replay(&self.start, &self.steps)
    }
}

/// Replays `steps` from `start`, checking guards and recorded fresh ids.
pub fn replay(start: &Hypergraph, steps: &[Operation]) -> Result<Hypergraph> {
    let mut h = start.clone();
    for (i, step) in steps.iter().enumerate() {
        let (next, applied) = step.apply(&h)?;
        if let (Some(recorded), Some(produced)) = (step.recorded_fresh(), applied.recorded_fresh())
        {
            if recorded != produced {
                return Err(Error::FreshMismatch {
                    step: i,
                    recorded,
                    produced,
                });
            }
        }
        h = next;
    }
    Ok(h)
}

fn join_ids<T: std::fmt::Display>(ids: impl Iterator<Item = T>) -> String {
    ids.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl std::fmt::Display for Operation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Operation::DeleteVertex { vertex } => write!(f, "delete-vertex {vertex}"),
            Operation::DeleteEdge { edge } => write!(f, "delete-edge {edge}"),
            Operation::ForwardContract { edge } => write!(f, "forward-contract {edge}"),
            Operation::BackwardContract { edge } => write!(f, "backward-contract {edge}"),
            Operation::CutEdge { edge } => write!(f, "cut-edge {edge}"),
            Operation::SeparateSource {
                edges,
                vertex,
                fresh,
            } => {
                write!(f, "separate-source {vertex} {}", join_ids(edges.iter()))?;
                if let Some(w) = fresh {
                    write!(f, " fresh={w}")?;
                }
                Ok(())
            }
            Operation::DecomposeRange { edge, fresh } => {
                write!(f, "decompose-range {edge}")?;
                if !fresh.is_empty() {
                    write!(f, " fresh={}", join_ids(fresh.iter()))?;
                }
                Ok(())
            }
            Operation::RemoveVertexFromSource { edge, vertex } => {
                write!(f, "remove-vertex-from-source {edge} {vertex}")
            }
            Operation::DeleteSet { set } => write!(
                f,
                "delete-set vertices={} edges={}",
                join_ids(set.vertices.iter()),
                join_ids(set.edges.iter())
            ),
            Operation::ContractPath { edges } => {
                write!(f, "contract-path {}", join_ids(edges.iter()))
            }
            Operation::SeparateSourceOfEdge { edge } => {
                write!(f, "separate-source-of-edge {edge}")
            }
        }
    }
}

/// Renders a step list as a text log, one step per line. Lines starting
/// with `#` are comments.
pub fn steps_to_log(steps: &[Operation]) -> String {
    let mut out = String::new();
    for s in steps {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

fn split_ids<T: std::str::FromStr<Err = Error>>(text: &str) -> Result<Vec<T>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| s.parse()).collect()
}

/// Parses a text log into a step list.
pub fn steps_from_log(text: &str) -> Result<Vec<Operation>> {
    let mut steps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| Error::TraceParse {
            line: lineno + 1,
            message: message.to_string(),
        };
        let mut parts = line.split_whitespace();
        let kind = parts.next().ok_or_else(|| err("missing operation kind"))?;
        let args: Vec<&str> = parts.collect();
        let fresh_arg = |prefix: &str| -> Option<&str> {
            args.iter()
                .find_map(|a| a.strip_prefix(prefix))
        };
        let positional: Vec<&str> = args
            .iter()
            .filter(|a| !a.contains('='))
            .cloned()
            .collect();
        let one = |i: usize| -> Result<&str> {
            positional
                .get(i)
                .copied()
                .ok_or_else(|| err("missing argument"))
        };
        let step = match kind {
            "delete-vertex" => Operation::DeleteVertex {
                vertex: one(0)?.parse()?,
            },
            "delete-edge" => Operation::DeleteEdge {
                edge: one(0)?.parse()?,
            },
            "forward-contract" => Operation::ForwardContract {
                edge: one(0)?.parse()?,
            },
            "backward-contract" => Operation::BackwardContract {
                edge: one(0)?.parse()?,
            },
            "cut-edge" => Operation::CutEdge {
                edge: one(0)?.parse()?,
            },
            "separate-source" => Operation::SeparateSource {
                vertex: one(0)?.parse()?,
                edges: split_ids(one(1)?)?.into_iter().collect(),
                fresh: fresh_arg("fresh=").map(|s| s.parse()).transpose()?,
            },
            "decompose-range" => Operation::DecomposeRange {
                edge: one(0)?.parse()?,
                fresh: split_ids(fresh_arg("fresh=").unwrap_or(""))?,
            },
            "remove-vertex-from-source" => Operation::RemoveVertexFromSource {
                edge: one(0)?.parse()?,
                vertex: one(1)?.parse()?,
            },
            "delete-set" => Operation::DeleteSet {
                set: MixedSet::new(
                    split_ids(fresh_arg("vertices=").unwrap_or(""))?
                        .into_iter()
                        .collect(),
                    split_ids(fresh_arg("edges=").unwrap_or(""))?
                        .into_iter()
                        .collect(),
                ),
            },
            "contract-path" => Operation::ContractPath {
                edges: split_ids(one(0)?)?,
            },
            "separate-source-of-edge" => Operation::SeparateSourceOfEdge {
                edge: one(0)?.parse()?,
            },
            other => return Err(err(&format!("unknown operation {other:?}"))),
        };
        steps.push(step);
    }
    Ok(steps)
}
