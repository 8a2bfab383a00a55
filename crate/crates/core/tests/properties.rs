//! Property tests for the structural invariants of the core operations.

use hyperminor::*;
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

fn pick(labels: &[VertexId], mask: u32) -> BTreeSet<VertexId> {
    labels
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, v)| v.clone())
        .collect()
}

fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (1usize..=4).prop_flat_map(|nv| {
        let masks = prop::collection::vec((1u32..(1 << nv), 0u32..(1 << nv)), 0..=4);
        masks.prop_map(move |edges| {
            let labels: Vec<VertexId> = (1..=nv).map(|i| vid(&format!("v{i}"))).collect();
            let edge_map: BTreeMap<EdgeId, Edge> = edges
                .into_iter()
                .enumerate()
                .map(|(i, (smask, rmask))| {
                    (
                        eid(&format!("e{}", i + 1)),
                        Edge {
                            source: pick(&labels, smask),
                            range: pick(&labels, rmask),
                        },
                    )
                })
                .collect();
            Hypergraph::new(labels.into_iter().collect(), edge_map)
        })
    })
}

proptest! {
    #[test]
    fn round_trip_is_identity(h in arb_hypergraph()) {
        let text = serialize(&h);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(h in arb_hypergraph()) {
        let w = are_isomorphic(&h, &h).expect("reflexive");
        prop_assert!(w.check(&h, &h));

        // Relabel vertices by appending a tick, edges by prefixing.
        let relabeled = {
            let vertices: BTreeSet<VertexId> =
                h.vertices().map(|v| vid(&format!("{v}'"))).collect();
            let edges: BTreeMap<EdgeId, Edge> = h
                .edges()
                .map(|(id, e)| {
                    (
                        eid(&format!("x{id}")),
                        Edge {
                            source: e.source.iter().map(|v| vid(&format!("{v}'"))).collect(),
                            range: e.range.iter().map(|v| vid(&format!("{v}'"))).collect(),
                        },
                    )
                })
                .collect();
            Hypergraph::new(vertices, edges)
        };
        let w = are_isomorphic(&h, &relabeled).expect("relabeling is an isomorphism");
        prop_assert!(w.check(&h, &relabeled));
        prop_assert!(w.invert().check(&relabeled, &h));
        prop_assert_eq!(canonical_key(&h), canonical_key(&relabeled));
    }

    #[test]
    fn operations_preserve_validity(h in arb_hypergraph()) {
        let vs: Vec<VertexId> = h.vertices().cloned().collect();
        let es: Vec<EdgeId> = h.edge_ids().cloned().collect();
        for v in &vs {
            if let Ok(out) = delete_vertex(&h, v) {
                prop_assert!(out.validate().ok);
            }
        }
        for e in &es {
            for out in [
                delete_edge(&h, e),
                forward_contract(&h, e),
                backward_contract(&h, e),
                cut_edge(&h, e),
                remove_vertex_from_source(&h, e, vs.first().unwrap()),
            ]
            .into_iter()
            .flatten()
            {
                prop_assert!(out.validate().ok);
            }
            if let Ok((out, _)) = decompose_range(&h, e) {
                prop_assert!(out.validate().ok);
            }
            if let Ok((out, _)) = separate_source_of_edge(&h, e) {
                prop_assert!(out.validate().ok);
            }
        }
        for w in &vs {
            let starters: BTreeSet<EdgeId> = h.edges_from(w).cloned().collect();
            for f in &starters {
                let set = BTreeSet::from([f.clone()]);
                if let Ok((out, _)) = separate_source(&h, &set, w) {
                    prop_assert!(out.validate().ok);
                }
            }
        }
    }

    #[test]
    fn delete_set_is_order_independent(h in arb_hypergraph(), seed in 0u64..1000) {
        let vs: Vec<VertexId> = h.vertices().cloned().collect();
        let es: Vec<EdgeId> = h.edge_ids().cloned().collect();
        let set = MixedSet::new(
            vs.iter().filter(|v| v.as_str().len() % 2 == (seed % 2) as usize).cloned().collect(),
            es.iter().enumerate().filter(|(i, _)| (seed >> i) & 1 == 1).map(|(_, e)| e.clone()).collect(),
        );
        let combined = delete_set(&h, &set).unwrap();
        prop_assert!(combined.validate().ok);

        // Apply single deletions in two different orders: edges first and
        // vertices first; also interleave based on the seed.
        let mut a = h.clone();
        for e in &set.edges { a = delete_edge(&a, e).unwrap(); }
        for v in &set.vertices { a = delete_vertex(&a, v).unwrap(); }
        prop_assert_eq!(&a, &combined);

        let mut b = h.clone();
        for v in &set.vertices { b = delete_vertex(&b, v).unwrap(); }
        for e in &set.edges {
            if b.has_edge(e) { b = delete_edge(&b, e).unwrap(); }
        }
        prop_assert_eq!(&b, &combined);
    }

    #[test]
    fn decompose_preserves_vertices_and_sources(h in arb_hypergraph()) {
        for e in h.edge_ids() {
            if let Ok((out, fresh)) = decompose_range(&h, e) {
                prop_assert_eq!(out.vertex_set(), h.vertex_set());
                prop_assert_eq!(fresh.len(), h.range(e).len());
                // The multiset of sources is preserved: the decomposed edge
                // contributes one copy of its source per range vertex.
                let mut before: Vec<&BTreeSet<VertexId>> =
                    h.edges().filter(|(id, _)| id != &e).map(|(_, d)| &d.source).collect();
                before.extend(std::iter::repeat_n(h.source(e), h.range(e).len()));
                before.sort();
                let mut after: Vec<&BTreeSet<VertexId>> =
                    out.edges().map(|(_, d)| &d.source).collect();
                after.sort();
                prop_assert_eq!(before, after);
            }
        }
    }

    #[test]
    fn separate_source_bookkeeping(h in arb_hypergraph()) {
        let vs: Vec<VertexId> = h.vertices().cloned().collect();
        for w in &vs {
            let starters: Vec<EdgeId> = h.edges_from(w).cloned().collect();
            if starters.len() < 2 {
                continue;
            }
            let set: BTreeSet<EdgeId> = starters.iter().take(1).cloned().collect();
            let (out, fresh) = separate_source(&h, &set, w).unwrap();
            prop_assert_eq!(out.vertex_count(), h.vertex_count() + 1);
            prop_assert_eq!(out.edge_count(), h.edge_count());
            for f in &set {
                prop_assert!(!out.source(f).contains(w));
                prop_assert!(out.source(f).contains(&fresh));
            }
            for (id, edge) in h.edges() {
                if edge.range.contains(w) {
                    prop_assert!(out.range(id).contains(&fresh));
                }
            }
        }
    }

    #[test]
    fn cut_edge_is_idempotent(h in arb_hypergraph()) {
        for e in h.edge_ids() {
            let once = cut_edge(&h, e).unwrap();
            let twice = cut_edge(&once, e).unwrap();
            prop_assert_eq!(&once, &twice);
        }
    }

    #[test]
    fn cycles_are_closed_paths(h in arb_hypergraph()) {
        let es: Vec<EdgeId> = h.edge_ids().cloned().collect();
        for a in &es {
            for b in &es {
                let edges = if a == b { vec![a.clone()] } else { vec![a.clone(), b.clone()] };
                if let Ok(p) = Path::new(&h, edges) {
                    if is_cycle(&h, &p).unwrap() {
                        prop_assert!(p.is_closed(&h));
                    }
                }
            }
        }
    }

    #[test]
    fn easy_structures_are_closed(h in arb_hypergraph()) {
        for f in h.edge_ids() {
            if let Some(set) = easy_edge_set(&h, f).unwrap() {
                prop_assert!(is_closed_under_source_entries(&h, &set).unwrap());
            }
        }
        if let Some(cycle) = find_easy_cycle(&h) {
            let set: BTreeSet<EdgeId> = cycle.edges().iter().cloned().collect();
            prop_assert!(is_closed_under_range_exits(&h, &set).unwrap());
        }
    }

    #[test]
    fn contract_path_replays_to_its_result(h in arb_hypergraph()) {
        let host = normalize(&h).result;
        // Hunt for a two-edge path with a singleton-source tail.
        let es: Vec<EdgeId> = host.edge_ids().cloned().collect();
        'outer: for a in &es {
            for b in &es {
                if a == b || host.source(b).len() != 1 {
                    continue;
                }
                if host.range(a).intersection(host.source(b)).next().is_none() {
                    continue;
                }
                let path = Path::new(&host, vec![a.clone(), b.clone()]).unwrap();
                let c = contract_path(&host, &path).unwrap();
                let replayed = replay(&host, &c.steps).unwrap();
                prop_assert_eq!(&replayed, &c.result);
                // The surviving first edge took the last edge's range, and
                // the vertex set is unchanged.
                prop_assert_eq!(c.result.vertex_set(), host.vertex_set());
                let first_now = c.current(a);
                prop_assert_eq!(c.result.range(&first_now), host.range(b));
                prop_assert!(!c.result.has_edge(&c.current(b)) || c.current(b) == first_now);
                break 'outer;
            }
        }
    }

    #[test]
    fn parser_never_panics(text in "\\PC*") {
        let _ = parse(&text);
    }

    #[test]
    fn parser_never_panics_on_jsonish(text in "[\\{\\}\\[\\]\",:a-z0-9 ]*") {
        let _ = parse(&text);
    }

    #[test]
    fn trace_parser_never_panics(text in "[a-z\\-= ,@0-9\\n#]*") {
        if let Ok(steps) = steps_from_log(&text) {
            // Whatever parses must re-serialize and parse back to itself.
            let log = steps_to_log(&steps);
            prop_assert_eq!(steps_from_log(&log).unwrap(), steps);
        }
    }

    #[test]
    fn directed_graph_images_are_unit_edges(arcs in prop::collection::vec((1u8..=4, 1u8..=4), 0..=5)) {
        let arcs: Vec<Arc> = arcs
            .iter()
            .enumerate()
            .map(|(i, (s, d))| Arc::new(&format!("a{i}"), &format!("v{s}"), &format!("v{d}")))
            .collect();
        let h = from_directed_graph(&arcs, &BTreeSet::new()).unwrap();
        for (_, e) in h.edges() {
            prop_assert_eq!(e.source.len(), 1);
            prop_assert_eq!(e.range.len(), 1);
        }
        prop_assert!(h.validate().ok);
    }
}
