//! Finite directed hypergraphs.
//!
//! A hypergraph is a tuple of a vertex set and an edge set where every edge
//! carries a nonempty *source* vertex set and a (possibly empty) *range*
//! vertex set. An edge with empty range behaves like an undirected edge.
//! All containers are ordered so that every iteration order, and hence every
//! derived trace, is reproducible.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

fn label_ok(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '@' || c == '\'')
}

macro_rules! id_type {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn new(label: impl Into<String>) -> Result<Self> {
                let label = label.into();
                if label_ok(&label) {
                    Ok(Self(label))
                } else {
                    Err(Error::InvalidLabel(label))
                }
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl std::str::FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                Self::new(s)
            }
        }
    };
}

id_type!(VertexId);
id_type!(EdgeId);

/// Shorthand for tests and fixtures; panics on an invalid label.
pub fn vid(label: &str) -> VertexId {
    VertexId::new(label).expect("vertex label")
}

/// Shorthand for tests and fixtures; panics on an invalid label.
pub fn eid(label: &str) -> EdgeId {
    EdgeId::new(label).expect("edge label")
}

/// Source and range of a single edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub source: BTreeSet<VertexId>,
    pub range: BTreeSet<VertexId>,
}

/// A finite directed hypergraph.
///
/// Construction is permissive: invariants (nonempty sources, no dangling
/// vertices) are checked by [`Hypergraph::validate`], not by the constructor,
/// so raw parsed input can be inspected before use. All rewrite operations
/// assume a valid host.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hypergraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
}

impl Hypergraph {
    pub fn new(vertices: BTreeSet<VertexId>, edges: BTreeMap<EdgeId, Edge>) -> Self {
        Hypergraph { vertices, edges }
    }

    /// Builds a hypergraph from literal parts. Vertices referenced by edges
    /// are added automatically; `extra_vertices` lists isolated ones.
    ///
    /// Panics on invalid labels or duplicate edge ids, so only suitable for
    /// fixtures and tests.
    pub fn from_parts(extra_vertices: &[&str], edges: &[(&str, &[&str], &[&str])]) -> Self {
        let mut h = Hypergraph::default();
        for v in extra_vertices {
            h.vertices.insert(vid(v));
        }
        for (id, source, range) in edges {
            let id = eid(id);
            let source: BTreeSet<_> = source.iter().map(|v| vid(v)).collect();
            let range: BTreeSet<_> = range.iter().map(|v| vid(v)).collect();
            h.vertices.extend(source.iter().cloned());
            h.vertices.extend(range.iter().cloned());
            let dup = h.edges.insert(id.clone(), Edge { source, range });
            assert!(dup.is_none(), "duplicate edge id {id}");
        }
        h
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.vertices.iter()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &Edge)> + '_ {
        self.edges.iter()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> + '_ {
        self.edges.keys()
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub(crate) fn edge_mut(&mut self, id: &EdgeId) -> Option<&mut Edge> {
        self.edges.get_mut(id)
    }

    pub(crate) fn vertices_mut(&mut self) -> &mut BTreeSet<VertexId> {
        &mut self.vertices
    }

    pub(crate) fn edges_mut(&mut self) -> &mut BTreeMap<EdgeId, Edge> {
        &mut self.edges
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Source of an edge; panics if the edge does not exist.
    pub fn source(&self, e: &EdgeId) -> &BTreeSet<VertexId> {
        &self.edges[e].source
    }

    /// Range of an edge; panics if the edge does not exist.
    pub fn range(&self, e: &EdgeId) -> &BTreeSet<VertexId> {
        &self.edges[e].range
    }

    /// Edges starting from `v`, i.e. with `v` in their source.
    pub fn edges_from(&self, v: &VertexId) -> impl Iterator<Item = &EdgeId> + '_ {
        let v = v.clone();
        self.edges
            .iter()
            .filter(move |(_, e)| e.source.contains(&v))
            .map(|(id, _)| id)
    }

    /// Edges with `v` in their range.
    pub fn edges_into(&self, v: &VertexId) -> impl Iterator<Item = &EdgeId> + '_ {
        let v = v.clone();
        self.edges
            .iter()
            .filter(move |(_, e)| e.range.contains(&v))
            .map(|(id, _)| id)
    }

    /// A vertex is a sink when no edge starts from it.
    pub fn is_sink(&self, v: &VertexId) -> Result<bool> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        Ok(self.edges_from(v).next().is_none())
    }

    /// Smallest vertex label of the shape `base` or `base@sN` absent from the
    /// vertex set. `N` starts at 0 and counts up.
    pub(crate) fn fresh_vertex(&self, base: &VertexId) -> VertexId {
        for n in 0usize.. {
            let candidate = vid(&format!("{base}@s{n}"));
            if !self.vertices.contains(&candidate) {
                return candidate;
            }
        }
        unreachable!()
    }

    /// Smallest edge label of the shape `edge@vertex` or `edge@vertex@N`
    /// absent from the edge set.
    pub(crate) fn fresh_edge(&self, edge: &EdgeId, vertex: &VertexId) -> EdgeId {
        let candidate = eid(&format!("{edge}@{vertex}"));
        if !self.edges.contains_key(&candidate) {
            return candidate;
        }
        for n in 0usize.. {
            let candidate = eid(&format!("{edge}@{vertex}@{n}"));
            if !self.edges.contains_key(&candidate) {
                return candidate;
            }
        }
        unreachable!()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (id, edge) in &self.edges {
            if edge.source.is_empty() {
                violations.push(Violation {
                    code: ViolationCode::EmptySource,
                    message: format!("edge {id} has an empty source"),
                    offending: vec![id.to_string()],
                });
            }
            for v in edge.source.iter().chain(edge.range.iter()) {
                if !self.vertices.contains(v) {
                    violations.push(Violation {
                        code: ViolationCode::DanglingVertex,
                        message: format!("edge {id} references unknown vertex {v}"),
                        offending: vec![id.to_string(), v.to_string()],
                    });
                }
            }
        }
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationCode {
    EmptySource,
    DanglingVertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
    pub offending: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// One arc of an ordinary directed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: EdgeId,
    pub src: VertexId,
    pub dst: VertexId,
}

impl Arc {
    pub fn new(id: &str, src: &str, dst: &str) -> Self {
        Arc {
            id: eid(id),
            src: vid(src),
            dst: vid(dst),
        }
    }
}

/// Embeds a directed graph as the hypergraph with singleton sources and
/// ranges. Vertices are the arc endpoints plus the listed isolated vertices.
pub fn from_directed_graph(arcs: &[Arc], isolated: &BTreeSet<VertexId>) -> Result<Hypergraph> {
    let mut h = Hypergraph::default();
    h.vertices.extend(isolated.iter().cloned());
    for arc in arcs {
        h.vertices.insert(arc.src.clone());
        h.vertices.insert(arc.dst.clone());
        let edge = Edge {
            source: BTreeSet::from([arc.src.clone()]),
            range: BTreeSet::from([arc.dst.clone()]),
        };
        if h.edges.insert(arc.id.clone(), edge).is_some() {
            return Err(Error::DuplicateId(arc.id.to_string()));
        }
    }
    Ok(h)
}

/// A nonempty edge sequence whose consecutive edges are linked, i.e.
/// `r(e_i) ∩ s(e_{i+1}) ≠ ∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn new(host: &Hypergraph, edges: Vec<EdgeId>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyPath);
        }
        for e in &edges {
            if !host.has_edge(e) {
                return Err(Error::UnknownEdge(e.clone()));
            }
        }
        for pair in edges.windows(2) {
            if host.range(&pair[0]).intersection(host.source(&pair[1])).next().is_none() {
                return Err(Error::BrokenPath {
                    first: pair[0].clone(),
                    second: pair[1].clone(),
                });
            }
        }
        Ok(Path { edges })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Closed means the range of the last edge meets the source of the first.
    pub fn is_closed(&self, host: &Hypergraph) -> bool {
        let first = &self.edges[0];
        let last = &self.edges[self.edges.len() - 1];
        host.range(last).intersection(host.source(first)).next().is_some()
    }
}

/// A closed path is a cycle when `r(e_i) ∩ s(e_j) = ∅` for every index pair
/// except the consecutive ones `j = i+1 ≤ n` and the closing pair
/// `1 = j ≤ i = n`.
pub fn is_cycle(host: &Hypergraph, path: &Path) -> Result<bool> {
    for e in path.edges() {
        if !host.has_edge(e) {
            return Err(Error::UnknownEdge(e.clone()));
        }
    }
    if !path.is_closed(host) {
        return Ok(false);
    }
    let n = path.len();
    let edges = path.edges();
    for i in 1..=n {
        for j in 1..=n {
            let allowed = (j == i + 1 && j <= n) || (j == 1 && i == n);
            if allowed {
                continue;
            }
            let meets = host
                .range(&edges[i - 1])
                .intersection(host.source(&edges[j - 1]))
                .next()
                .is_some();
            if meets {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
