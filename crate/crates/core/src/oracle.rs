//! Independent verification machinery: exhaustive enumeration of small
//! hypergraphs up to isomorphism and a budgeted breadth-first search over
//! the primitive minor operations.
//!
//! Source separation and range decomposition grow a hypergraph, so the
//! search space is infinite; the budget caps growth operations, path length
//! and explored states. A miss therefore means "not found within budget",
//! never "not a minor".

use crate::catalog::catalog_entry;
use crate::classify::Certificate;
use crate::error::Error;
use crate::hypergraph::{eid, vid, Edge, EdgeId, Hypergraph, VertexId};
use crate::iso::{are_isomorphic, canonical_key, IsoWitness};
use crate::ops::Operation;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

/// Caps for the minor search. Growth operations are counted per path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_separations: usize,
    pub max_decompositions: usize,
    pub max_total_steps: usize,
    pub max_frontier: usize,
}

impl Default for SearchBudget {
    /// Sized to the constructions behind the forbidden-minor dispatch, none
    /// of which needs more than two growth operations.
    fn default() -> Self {
        SearchBudget {
            max_separations: 2,
            max_decompositions: 2,
            max_total_steps: 10,
            max_frontier: 200_000,
        }
    }
}

fn canonical_vertex_names(n: usize) -> Vec<VertexId> {
    (1..=n).map(|i| vid(&format!("v{i}"))).collect()
}

fn subsets(universe: &[VertexId], allow_empty: bool) -> Vec<BTreeSet<VertexId>> {
    let n = universe.len();
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        if mask == 0 && !allow_empty {
            continue;
        }
        let set: BTreeSet<VertexId> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| universe[i].clone())
            .collect();
        out.push(set);
    }
    out
}

fn build(nv: usize, shapes: &[(BTreeSet<VertexId>, BTreeSet<VertexId>)]) -> Hypergraph {
    let vertices: BTreeSet<VertexId> = canonical_vertex_names(nv).into_iter().collect();
    let edges: BTreeMap<EdgeId, Edge> = shapes
        .iter()
        .enumerate()
        .map(|(i, (source, range))| {
            (
                eid(&format!("e{}", i + 1)),
                Edge {
                    source: source.clone(),
                    range: range.clone(),
                },
            )
        })
        .collect();
    Hypergraph::new(vertices, edges)
}

/// Multisets of size `k` over `0..n`, nondecreasing index sequences.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, k, i, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

fn enumerate_cell(
    nv: usize,
    ne: usize,
    allow_empty_range: bool,
    directed_only: bool,
) -> Vec<Hypergraph> {
    let universe_v = canonical_vertex_names(nv);
    let mut pair_universe: Vec<(BTreeSet<VertexId>, BTreeSet<VertexId>)> = Vec::new();
    for source in subsets(&universe_v, false) {
        if directed_only && source.len() != 1 {
            continue;
        }
        for range in subsets(&universe_v, allow_empty_range && !directed_only) {
            if directed_only && range.len() != 1 {
                continue;
            }
            pair_universe.push((source.clone(), range));
        }
    }
    if ne > 0 && pair_universe.is_empty() {
        return Vec::new();
    }
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for pick in multisets(pair_universe.len(), ne) {
        let shapes: Vec<(BTreeSet<VertexId>, BTreeSet<VertexId>)> =
            pick.iter().map(|&i| pair_universe[i].clone()).collect();
        let h = build(nv, &shapes);
        if seen.insert(canonical_key(&h)) {
            out.push(h);
        }
    }
    out
}

/// Every isomorphism class with at most `max_v` vertices and `max_e` edges,
/// each emitted exactly once with canonical labels `v1…`, `e1…`.
pub fn enumerate_hypergraphs(
    max_v: usize,
    max_e: usize,
    allow_empty_range: bool,
) -> impl Iterator<Item = Hypergraph> {
    let cells: Vec<(usize, usize)> = (0..=max_v)
        .flat_map(|nv| (0..=max_e).map(move |ne| (nv, ne)))
        .collect();
    cells.into_iter().flat_map(move |(nv, ne)| {
        if nv == 0 && ne > 0 {
            Vec::new()
        } else {
            enumerate_cell(nv, ne, allow_empty_range, false)
        }
    })
}

/// Isomorphism classes with exactly the given vertex and edge counts; the
/// orbit counts of the class census are checked against this.
pub fn enumerate_exact(nv: usize, ne: usize, allow_empty_range: bool) -> Vec<Hypergraph> {
    if nv == 0 && ne > 0 {
        return Vec::new();
    }
    enumerate_cell(nv, ne, allow_empty_range, false)
}

/// Directed multigraphs (singleton sources and ranges) up to isomorphism,
/// with at most `max_v` vertices and `max_e` arcs.
pub fn enumerate_directed_graphs(
    max_v: usize,
    max_e: usize,
) -> impl Iterator<Item = Hypergraph> {
    let cells: Vec<(usize, usize)> = (0..=max_v)
        .flat_map(|nv| (0..=max_e).map(move |ne| (nv, ne)))
        .collect();
    cells.into_iter().flat_map(move |(nv, ne)| {
        if nv == 0 && ne > 0 {
            Vec::new()
        } else {
            enumerate_cell(nv, ne, false, true)
        }
    })
}

/// A successful minor search: the operations from the start hypergraph and
/// the isomorphism from their endpoint onto the target.
#[derive(Debug, Clone)]
pub struct MinorFound {
    pub steps: Vec<Operation>,
    pub endpoint: Hypergraph,
    pub iso: IsoWitness,
}

/// Whether `target` could still be reached from `state` with the remaining
/// growth budget. Separations add one vertex each; a decomposition of an
/// edge with `k` range vertices adds `k - 1` edges; nothing else grows, and
/// no operation gives an all-empty-range hypergraph a nonempty range.
fn reachable(
    state: &Hypergraph,
    target: &Hypergraph,
    seps_left: usize,
    decs_left: usize,
) -> bool {
    if state.vertex_count() + seps_left < target.vertex_count() {
        return false;
    }
    let max_range = state
        .edges()
        .map(|(_, e)| e.range.len())
        .max()
        .unwrap_or(0)
        .max(1);
    if state.edge_count() + decs_left * (max_range.saturating_sub(1) + seps_left)
        < target.edge_count()
    {
        return false;
    }
    let state_undirected = state.edges().all(|(_, e)| e.range.is_empty());
    let target_directed = target.edges().any(|(_, e)| !e.range.is_empty());
    !(state_undirected && target_directed)
}

/// One breadth-first search serving several targets at once. Returns, per
/// target, the first operation sequence reaching it within budget.
fn search_engine(
    h: &Hypergraph,
    targets: &[Hypergraph],
    budget: &SearchBudget,
) -> Vec<Option<(Vec<Operation>, Hypergraph)>> {
    let target_keys: Vec<String> = targets.iter().map(canonical_key).collect();
    let mut found: Vec<Option<(Vec<Operation>, Hypergraph)>> = vec![None; targets.len()];
    let start_key = canonical_key(h);
    for (i, key) in target_keys.iter().enumerate() {
        if *key == start_key {
            found[i] = Some((Vec::new(), h.clone()));
        }
    }
    let open = |found: &Vec<Option<(Vec<Operation>, Hypergraph)>>| {
        found.iter().any(Option::is_none)
    };
    if !open(&found) {
        return found;
    }
    let mut visited: HashSet<String> = HashSet::from([start_key]);
    let mut queue: VecDeque<(Hypergraph, Vec<Operation>, usize, usize)> =
        VecDeque::from([(h.clone(), Vec::new(), 0, 0)]);
    while let Some((state, steps, seps, decs)) = queue.pop_front() {
        if steps.len() >= budget.max_total_steps {
            continue;
        }
        let seps_left = budget.max_separations - seps;
        let decs_left = budget.max_decompositions - decs;
        let worth_expanding = found
            .iter()
            .zip(targets)
            .any(|(slot, t)| slot.is_none() && reachable(&state, t, seps_left, decs_left));
        if !worth_expanding {
            continue;
        }
        for op in candidate_operations(&state, budget, seps, decs) {
            let (next, applied) = match op.apply(&state) {
                Ok(x) => x,
                Err(_) => continue,
            };
            let key = canonical_key(&next);
            if !visited.insert(key.clone()) {
                continue;
            }
            if visited.len() > budget.max_frontier {
                return found;
            }
            let mut next_steps = steps.clone();
            next_steps.push(applied);
            for (i, target_key) in target_keys.iter().enumerate() {
                if found[i].is_none() && *target_key == key {
                    found[i] = Some((next_steps.clone(), next.clone()));
                }
            }
            if !open(&found) {
                return found;
            }
            queue.push_back((
                next,
                next_steps,
                seps + usize::from(is_growth_sep(&op)),
                decs + usize::from(is_growth_dec(&op)),
            ));
        }
    }
    found
}

fn candidate_operations(h: &Hypergraph, budget: &SearchBudget, seps: usize, decs: usize) -> Vec<Operation> {
    let mut out = Vec::new();
    for v in h.vertices() {
        out.push(Operation::DeleteVertex { vertex: v.clone() });
    }
    for (f, _) in h.edges() {
        out.push(Operation::DeleteEdge { edge: f.clone() });
    }
    for (f, edge) in h.edges() {
        if !edge.range.is_empty() {
            out.push(Operation::CutEdge { edge: f.clone() });
        }
    }
    for (f, _) in h.edges() {
        out.push(Operation::ForwardContract { edge: f.clone() });
        out.push(Operation::BackwardContract { edge: f.clone() });
    }
    if seps < budget.max_separations {
        for w in h.vertices() {
            let starters: Vec<EdgeId> = h.edges_from(w).cloned().collect();
            let k = starters.len();
            if k < 2 {
                continue;
            }
            // All nonempty strict subsets, in ascending bitmask order.
            for mask in 1..((1u32 << k) - 1) {
                let set: BTreeSet<EdgeId> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| starters[i].clone())
                    .collect();
                out.push(Operation::SeparateSource {
                    edges: set,
                    vertex: w.clone(),
                    fresh: None,
                });
            }
        }
    }
    if decs < budget.max_decompositions {
        for (f, edge) in h.edges() {
            if edge.range.len() >= 2 {
                out.push(Operation::DecomposeRange {
                    edge: f.clone(),
                    fresh: Vec::new(),
                });
            }
        }
    }
    out
}

fn is_growth_sep(op: &Operation) -> bool {
    matches!(op, Operation::SeparateSource { .. })
}

fn is_growth_dec(op: &Operation) -> bool {
    matches!(op, Operation::DecomposeRange { .. })
}

/// Breadth-first search over primitive operations for a hypergraph
/// isomorphic to `target`. Deterministic: states are expanded in insertion
/// order and operations in a fixed canonical order, with isomorphic states
/// deduplicated by canonical key. `None` means not found within budget.
pub fn minor_search(
    h: &Hypergraph,
    target: &Hypergraph,
    budget: &SearchBudget,
) -> Option<MinorFound> {
    let mut found = search_engine(h, std::slice::from_ref(target), budget);
    found.swap_remove(0).map(|(steps, endpoint)| {
        let iso = are_isomorphic(&endpoint, target).expect("engine matched the key");
        MinorFound {
            steps,
            endpoint,
            iso,
        }
    })
}

/// Minor search against a catalog entry, packaged as a certificate.
pub fn minor_search_catalog(
    h: &Hypergraph,
    index: u8,
    budget: &SearchBudget,
) -> Option<Certificate> {
    let target = catalog_entry(index);
    minor_search(h, &target, budget).map(|found| Certificate {
        trace: crate::ops::Trace {
            start: h.clone(),
            steps: found.steps,
        },
        target_index: index,
        iso: found.iso,
    })
}

/// One shared search for all four forbidden minors; much cheaper than four
/// separate searches on the same start hypergraph.
pub fn minor_search_forbidden(
    h: &Hypergraph,
    budget: &SearchBudget,
) -> [Option<Certificate>; 4] {
    let targets: Vec<Hypergraph> = (1..=4).map(catalog_entry).collect();
    let found = search_engine(h, &targets, budget);
    let mut out = [None, None, None, None];
    for (i, slot) in found.into_iter().enumerate() {
        if let Some((steps, endpoint)) = slot {
            let iso = are_isomorphic(&endpoint, &targets[i]).expect("engine matched the key");
            out[i] = Some(Certificate {
                trace: crate::ops::Trace {
                    start: h.clone(),
                    steps,
                },
                target_index: (i + 1) as u8,
                iso,
            });
        }
    }
    out
}

/// Parses a budget string of the form `steps=10,sep=2,dec=2,frontier=200000`;
/// missing keys keep their defaults.
pub fn parse_budget(text: &str) -> Result<SearchBudget, Error> {
    let mut budget = SearchBudget::default();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part.split_once('=').ok_or_else(|| Error::TraceParse {
            line: 0,
            message: format!("budget entry {part:?} is not key=value"),
        })?;
        let value: usize = value.parse().map_err(|_| Error::TraceParse {
            line: 0,
            message: format!("budget value {value:?} is not a number"),
        })?;
        match key {
            "steps" => budget.max_total_steps = value,
            "sep" => budget.max_separations = value,
            "dec" => budget.max_decompositions = value,
            "frontier" => budget.max_frontier = value,
            other => {
                return Err(Error::TraceParse {
                    line: 0,
                    message: format!("unknown budget key {other:?}"),
                })
            }
        }
    }
    Ok(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::forbidden_catalog;
    use crate::classify::verify_certificate;

    #[test]
    fn exact_class_counts() {
        // One isolated vertex is the only (1,0) class.
        assert_eq!(enumerate_exact(1, 0, true).len(), 1);
        // With one vertex and one edge the range is empty or the loop.
        assert_eq!(enumerate_exact(1, 1, true).len(), 2);
        // Two vertices, one edge: 3 sources x 4 ranges modulo the swap.
        assert_eq!(enumerate_exact(2, 1, true).len(), 7);
    }

    #[test]
    fn exact_counts_match_brute_force_orbits() {
        // Independent check of the (2,1) census: count orbits of the swap
        // action directly.
        let names = canonical_vertex_names(2);
        let sources = subsets(&names, false);
        let ranges = subsets(&names, true);
        let swap = |s: &BTreeSet<VertexId>| -> BTreeSet<VertexId> {
            s.iter()
                .map(|v| {
                    if v == &names[0] {
                        names[1].clone()
                    } else {
                        names[0].clone()
                    }
                })
                .collect()
        };
        let mut orbits: BTreeSet<Vec<(Vec<String>, Vec<String>)>> = BTreeSet::new();
        for s in &sources {
            for r in &ranges {
                let plain = (
                    s.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    r.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                );
                let swapped = (
                    swap(s).iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    swap(r).iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                );
                orbits.insert(std::cmp::min(vec![plain.clone()], vec![swapped.clone()]));
            }
        }
        assert_eq!(orbits.len(), 7);
    }

    #[test]
    fn stream_is_duplicate_free() {
        let all: Vec<Hypergraph> = enumerate_hypergraphs(2, 2, true).collect();
        let keys: HashSet<String> = all.iter().map(canonical_key).collect();
        assert_eq!(keys.len(), all.len());
        for h in &all {
            assert!(h.validate().ok);
        }
    }

    #[test]
    fn reflexive_search_is_empty() {
        let g3 = &forbidden_catalog()[2];
        let found = minor_search(g3, g3, &SearchBudget::default()).expect("reflexive");
        assert!(found.steps.is_empty());
    }

    #[test]
    fn single_deletion_found() {
        let g3 = &forbidden_catalog()[2];
        let padded = Hypergraph::from_parts(
            &["z"],
            &[("e", &["v", "w"], &[]), ("f", &["v", "w"], &["w"])],
        );
        let cert = minor_search_catalog(&padded, 3, &SearchBudget::default()).expect("found");
        assert_eq!(cert.trace.len(), 1);
        assert!(verify_certificate(&padded, &cert));
        let _ = g3;
    }

    #[test]
    fn cut_one_edge_found() {
        // The reduced crossing pair reaches G3 by a single cut.
        let h = Hypergraph::from_parts(
            &[],
            &[("e@v", &["v", "w"], &["v"]), ("e@w", &["v", "w"], &["w"])],
        );
        let cert = minor_search_catalog(&h, 3, &SearchBudget::default()).expect("found");
        assert!(verify_certificate(&h, &cert));
        assert_eq!(cert.trace.len(), 1);
    }

    #[test]
    fn g4_is_not_reachable_from_g2() {
        // No operation introduces range vertices that were never there, so
        // the search must come back empty within any budget.
        let g2 = &forbidden_catalog()[1];
        let budget = SearchBudget {
            max_total_steps: 6,
            ..SearchBudget::default()
        };
        assert!(minor_search(g2, &forbidden_catalog()[3], &budget).is_none());
    }

    #[test]
    fn enlarging_the_budget_keeps_results() {
        let crossing = Hypergraph::from_parts(
            &[],
            &[("e@v", &["v", "w"], &["v"]), ("e@w", &["v", "w"], &["w"])],
        );
        let small = SearchBudget {
            max_separations: 0,
            max_decompositions: 0,
            max_total_steps: 1,
            max_frontier: 1000,
        };
        let with_small = minor_search_catalog(&crossing, 3, &small).expect("one cut suffices");
        let with_default =
            minor_search_catalog(&crossing, 3, &SearchBudget::default()).expect("still found");
        assert_eq!(with_small.trace.steps, with_default.trace.steps);
    }

    #[test]
    fn budget_parsing() {
        let b = parse_budget("steps=5,sep=1,dec=0,frontier=100").unwrap();
        assert_eq!(b.max_total_steps, 5);
        assert_eq!(b.max_separations, 1);
        assert_eq!(b.max_decompositions, 0);
        assert_eq!(b.max_frontier, 100);
        assert!(parse_budget("bogus").is_err());
        assert!(parse_budget("steps=x").is_err());
    }
}
