//! Isomorphism testing and canonical forms.
//!
//! Instances in this crate are tiny, so both problems are solved by the same
//! machinery: iterative refinement of vertex profiles (degree and incidence
//! shapes) followed by backtracking over the orderings of each profile class,
//! keeping the lexicographically smallest relabelled edge list. Two
//! hypergraphs are isomorphic exactly when their canonical keys agree, and
//! the minimizing orderings give an explicit witness.

use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use std::collections::BTreeMap;

/// An explicit isomorphism: a vertex bijection and an edge bijection that
/// carry sources and ranges over elementwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

impl IsoWitness {
    /// Verifies that this witness really is an isomorphism from `a` to `b`.
    pub fn check(&self, a: &Hypergraph, b: &Hypergraph) -> bool {
        if self.vertex_map.len() != a.vertex_count()
            || self.edge_map.len() != a.edge_count()
            || a.vertex_count() != b.vertex_count()
            || a.edge_count() != b.edge_count()
        {
            return false;
        }
        // Bijectivity.
        let mut seen_v = std::collections::BTreeSet::new();
        for (v, w) in &self.vertex_map {
            if !a.has_vertex(v) || !b.has_vertex(w) || !seen_v.insert(w.clone()) {
                return false;
            }
        }
        let mut seen_e = std::collections::BTreeSet::new();
        for (e, f) in &self.edge_map {
            if !a.has_edge(e) || !b.has_edge(f) || !seen_e.insert(f.clone()) {
                return false;
            }
        }
        // Structure preservation.
        for (e, f) in &self.edge_map {
            let src: Option<std::collections::BTreeSet<_>> = a
                .source(e)
                .iter()
                .map(|v| self.vertex_map.get(v).cloned())
                .collect();
            let rng: Option<std::collections::BTreeSet<_>> = a
                .range(e)
                .iter()
                .map(|v| self.vertex_map.get(v).cloned())
                .collect();
            match (src, rng) {
                (Some(src), Some(rng)) => {
                    if &src != b.source(f) || &rng != b.range(f) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// The inverse witness, mapping `b` back to `a`.
    pub fn invert(&self) -> IsoWitness {
        IsoWitness {
            vertex_map: self.vertex_map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            edge_map: self.edge_map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }
}

type EdgeRow = (Vec<usize>, Vec<usize>);

/// Canonical form: the vertex order realizing the smallest relabelled edge
/// list, together with that edge list.
struct Canon {
    order: Vec<VertexId>,
    rows: Vec<EdgeRow>,
}

type Sig = Vec<u64>;

fn refine_colors(h: &Hypergraph) -> BTreeMap<VertexId, usize> {
    let vs: Vec<&VertexId> = h.vertices().collect();
    let index: BTreeMap<&VertexId, usize> = vs.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let shapes: Vec<(&std::collections::BTreeSet<VertexId>, &std::collections::BTreeSet<VertexId>)> =
        h.edges().map(|(_, e)| (&e.source, &e.range)).collect();

    // Initial profile: multiset of incident edge shapes by role.
    let mut sigs: Vec<Sig> = vec![Vec::new(); vs.len()];
    for (i, v) in vs.iter().enumerate() {
        let mut inc: Vec<u64> = Vec::new();
        for (s, r) in &shapes {
            let role = (s.contains(v) as u64) | ((r.contains(v) as u64) << 1);
            if role != 0 {
                inc.push(role << 32 | (s.len() as u64) << 16 | r.len() as u64);
            }
        }
        inc.sort_unstable();
        sigs[i] = inc;
    }
    let mut colors = assign_indices(&sigs);

    for _round in 0..vs.len() {
        let mut next: Vec<Sig> = vec![Vec::new(); vs.len()];
        for (i, v) in vs.iter().enumerate() {
            let mut inc: Vec<u64> = Vec::new();
            for (s, r) in &shapes {
                let in_src = s.contains(v);
                let in_rng = r.contains(v);
                if !in_src && !in_rng {
                    continue;
                }
                let mut sc: Vec<u64> = s.iter().map(|u| colors[index[u]] as u64).collect();
                let mut rc: Vec<u64> = r.iter().map(|u| colors[index[u]] as u64).collect();
                sc.sort_unstable();
                rc.sort_unstable();
                // Fold the colored shape into one word stream.
                inc.push(u64::MAX); // shape separator
                inc.push((in_src as u64) | ((in_rng as u64) << 1));
                inc.extend(sc);
                inc.push(u64::MAX - 1); // source/range separator
                inc.extend(rc);
            }
            let mut grouped = split_shapes(&inc);
            grouped.sort_unstable();
            let mut flat: Vec<u64> = vec![colors[i] as u64];
            for g in grouped {
                flat.extend(g);
            }
            next[i] = flat;
        }
        let new_colors = assign_indices(&next);
        if new_colors == colors {
            break;
        }
        colors = new_colors;
    }
    vs.into_iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), colors[i]))
        .collect()
}

fn split_shapes(stream: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for chunk in stream.split(|x| *x == u64::MAX) {
        if !chunk.is_empty() {
            out.push(chunk.to_vec());
        }
    }
    out
}

fn assign_indices(sigs: &[Sig]) -> Vec<usize> {
    let mut unique: Vec<&Sig> = sigs.iter().collect();
    unique.sort_unstable();
    unique.dedup();
    sigs.iter()
        .map(|s| unique.binary_search(&s).unwrap())
        .collect()
}

fn rows_for(h: &Hypergraph, pos: &BTreeMap<&VertexId, usize>) -> Vec<EdgeRow> {
    let mut rows: Vec<EdgeRow> = h
        .edges()
        .map(|(_, edge)| {
            let mut s: Vec<usize> = edge.source.iter().map(|v| pos[v]).collect();
            let mut r: Vec<usize> = edge.range.iter().map(|v| pos[v]).collect();
            s.sort_unstable();
            r.sort_unstable();
            (s, r)
        })
        .collect();
    rows.sort_unstable();
    rows
}

fn canonical_form(h: &Hypergraph) -> Canon {
    let colors = refine_colors(h);
    // Group vertices by color; positions are assigned class by class, which
    // is sound because refined colors are isomorphism-invariant.
    let mut classes: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for (v, c) in &colors {
        classes.entry(*c).or_default().push(v.clone());
    }
    let classes: Vec<Vec<VertexId>> = classes.into_values().collect();

    let mut best: Option<Canon> = None;
    let mut order: Vec<VertexId> = Vec::with_capacity(h.vertex_count());
    permute_classes(h, &classes, 0, &mut order, &mut best);
    best.expect("canonical search yields at least one ordering")
}

fn permute_classes(
    h: &Hypergraph,
    classes: &[Vec<VertexId>],
    class_idx: usize,
    order: &mut Vec<VertexId>,
    best: &mut Option<Canon>,
) {
    if class_idx == classes.len() {
        let pos: BTreeMap<&VertexId, usize> =
            order.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let rows = rows_for(h, &pos);
        let better = match best {
            None => true,
            Some(b) => rows < b.rows,
        };
        if better {
            *best = Some(Canon {
                order: order.clone(),
                rows,
            });
        }
        return;
    }
    let class = &classes[class_idx];
    let mut remaining: Vec<VertexId> = class.clone();
    permute_within(h, classes, class_idx, &mut remaining, order, best);
}

fn permute_within(
    h: &Hypergraph,
    classes: &[Vec<VertexId>],
    class_idx: usize,
    remaining: &mut Vec<VertexId>,
    order: &mut Vec<VertexId>,
    best: &mut Option<Canon>,
) {
    if remaining.is_empty() {
        permute_classes(h, classes, class_idx + 1, order, best);
        return;
    }
    for i in 0..remaining.len() {
        let v = remaining.remove(i);
        order.push(v.clone());
        permute_within(h, classes, class_idx, remaining, order, best);
        order.pop();
        remaining.insert(i, v);
    }
}

/// A total, isomorphism-invariant key: equal keys iff isomorphic hypergraphs.
pub fn canonical_key(h: &Hypergraph) -> String {
    let canon = canonical_form(h);
    format!("{}:{:?}", h.vertex_count(), canon.rows)
}

/// Searches for a label renaming carrying `a` to `b` exactly; returns an
/// explicit witness when one exists.
pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Option<IsoWitness> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let ca = canonical_form(a);
    let cb = canonical_form(b);
    if ca.rows != cb.rows {
        return None;
    }
    let vertex_map: BTreeMap<VertexId, VertexId> = ca
        .order
        .iter()
        .cloned()
        .zip(cb.order.iter().cloned())
        .collect();
    // Group edges by their images: edges with identical (source, range) rows
    // are interchangeable, so match them off in sorted order.
    let mut groups_b: BTreeMap<(Vec<VertexId>, Vec<VertexId>), Vec<EdgeId>> = BTreeMap::new();
    for (id, edge) in b.edges() {
        let key = (
            edge.source.iter().cloned().collect(),
            edge.range.iter().cloned().collect(),
        );
        groups_b.entry(key).or_default().push(id.clone());
    }
    let mut edge_map = BTreeMap::new();
    for (id, edge) in a.edges() {
        let mut s: Vec<VertexId> = edge.source.iter().map(|v| vertex_map[v].clone()).collect();
        let mut r: Vec<VertexId> = edge.range.iter().map(|v| vertex_map[v].clone()).collect();
        s.sort_unstable();
        r.sort_unstable();
        let bucket = groups_b.get_mut(&(s, r))?;
        let target = bucket.pop()?;
        edge_map.insert(id.clone(), target);
    }
    let witness = IsoWitness {
        vertex_map,
        edge_map,
    };
    debug_assert!(witness.check(a, b));
    Some(witness)
}
