//! Shared fixtures for the criterion benchmarks.

use hyperminor::Hypergraph;

/// The five-vertex example: a wide hyperedge feeding a two-vertex box and a
/// tail edge onwards.
pub fn five_vertex() -> Hypergraph {
    Hypergraph::from_parts(
        &[],
        &[
            ("e", &["v1", "v2"], &["w1", "w2"]),
            ("f", &["w1"], &["u"]),
        ],
    )
}

/// A ladder-shaped directed graph with `n` rungs, as a hypergraph.
pub fn ladder(n: usize) -> Hypergraph {
    let mut edges: Vec<(String, Vec<String>, Vec<String>)> = Vec::new();
    for i in 0..n {
        edges.push((
            format!("a{i}"),
            vec![format!("u{i}")],
            vec![format!("u{}", i + 1)],
        ));
        edges.push((
            format!("b{i}"),
            vec![format!("u{}", i + 1)],
            vec![format!("u{i}")],
        ));
    }
    let borrowed: Vec<(&str, Vec<&str>, Vec<&str>)> = edges
        .iter()
        .map(|(id, s, r)| {
            (
                id.as_str(),
                s.iter().map(String::as_str).collect(),
                r.iter().map(String::as_str).collect(),
            )
        })
        .collect();
    let as_slices: Vec<(&str, &[&str], &[&str])> = borrowed
        .iter()
        .map(|(id, s, r)| (*id, s.as_slice(), r.as_slice()))
        .collect();
    Hypergraph::from_parts(&[], &as_slices)
}
