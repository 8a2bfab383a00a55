//! The four forbidden minors.
//!
//! Their associated algebras are non-exact (entries 1–3) or non-nuclear
//! (entry 4); here they only serve as the structural targets certificates
//! must reach.

use crate::hypergraph::Hypergraph;

/// Catalog entries in order: G1, G2, G3, G4. Indices in certificates are
/// 1-based.
pub fn forbidden_catalog() -> [Hypergraph; 4] {
    let g1 = Hypergraph::from_parts(
        &[],
        &[
            ("e", &["v1", "v2", "v3"], &[]),
            ("f", &["v1", "v2", "v3"], &[]),
        ],
    );
    let g2 = Hypergraph::from_parts(
        &[],
        &[
            ("e", &["v1", "v2"], &[]),
            ("f", &["v1", "v2"], &[]),
            ("g", &["v1", "v2"], &[]),
        ],
    );
    let g3 = Hypergraph::from_parts(&[], &[("e", &["v", "w"], &[]), ("f", &["v", "w"], &["w"])]);
    let g4 = Hypergraph::from_parts(
        &[],
        &[
            ("e", &["v1", "v2"], &["w"]),
            ("f", &["v1", "v2"], &["w"]),
        ],
    );
    [g1, g2, g3, g4]
}

/// Catalog entry by 1-based index. Panics outside 1..=4.
pub fn catalog_entry(index: u8) -> Hypergraph {
    let cat = forbidden_catalog();
    cat[(index - 1) as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shapes() {
        let cat = forbidden_catalog();
        assert_eq!(cat[0].vertex_count(), 3);
        assert_eq!(cat[0].edge_count(), 2);
        assert_eq!(cat[1].vertex_count(), 2);
        assert_eq!(cat[1].edge_count(), 3);
        assert_eq!(cat[2].vertex_count(), 2);
        assert_eq!(cat[2].edge_count(), 2);
        assert_eq!(cat[3].vertex_count(), 3);
        assert_eq!(cat[3].edge_count(), 2);
        for g in &cat {
            assert!(g.validate().ok);
        }
    }
}
