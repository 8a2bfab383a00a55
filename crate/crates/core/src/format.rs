//! The hypergraph document format.
//!
//! A document is a JSON object with a sorted `"vertices"` array and an
//! `"edges"` array of `{"id", "range", "source"}` records sorted by id,
//! with all member arrays sorted. Canonical serialization writes keys in
//! sorted order with two-space indentation, LF line endings and a trailing
//! newline, so byte equality coincides with structural equality.

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, EdgeId, Hypergraph, VertexId};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};

fn escape(s: &str) -> String {
    // Labels are restricted to [A-Za-z0-9_@'], none of which need escaping,
    // but keep the writer total.
    serde_json::to_string(s).expect("string serialization")
}

/// Canonical textual form of a hypergraph.
pub fn serialize(h: &Hypergraph) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"edges\": [");
    let mut first = true;
    for (id, edge) in h.edges() {
        if !first {
            out.push(',');
        }
        first = false;
        out.push_str("\n    {\n      \"id\": ");
        out.push_str(&escape(id.as_str()));
        out.push_str(",\n      \"range\": [");
        push_labels(&mut out, edge.range.iter().map(|v| v.as_str()));
        out.push_str("],\n      \"source\": [");
        push_labels(&mut out, edge.source.iter().map(|v| v.as_str()));
        out.push_str("]\n    }");
    }
    if !first {
        out.push_str("\n  ");
    }
    out.push_str("],\n  \"vertices\": [");
    push_labels(&mut out, h.vertices().map(|v| v.as_str()));
    out.push_str("]\n}\n");
    out
}

fn push_labels<'a>(out: &mut String, labels: impl Iterator<Item = &'a str>) {
    let mut first = true;
    for l in labels {
        if !first {
            out.push_str(", ");
        }
        first = false;
        out.push_str(&escape(l));
    }
}

fn parse_error(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: message.into(),
    }
}

/// Parses a document. Syntax errors carry the line and column reported by
/// the JSON reader; structural errors (duplicate ids, bad labels, missing
/// fields) name the offending element.
pub fn parse(text: &str) -> Result<Hypergraph> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| parse_error("document must be an object"))?;
    for key in obj.keys() {
        if key != "vertices" && key != "edges" {
            return Err(parse_error(format!("unknown field {key:?}")));
        }
    }

    let mut vertices = BTreeSet::new();
    let vs = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error("missing \"vertices\" array"))?;
    for v in vs {
        let label = v
            .as_str()
            .ok_or_else(|| parse_error("vertex labels must be strings"))?;
        if !vertices.insert(VertexId::new(label)?) {
            return Err(Error::DuplicateId(label.to_string()));
        }
    }

    let mut edges = BTreeMap::new();
    let es = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error("missing \"edges\" array"))?;
    for e in es {
        let rec = e
            .as_object()
            .ok_or_else(|| parse_error("edges must be objects"))?;
        for key in rec.keys() {
            if key != "id" && key != "source" && key != "range" {
                return Err(parse_error(format!("unknown edge field {key:?}")));
            }
        }
        let id = rec
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_error("edge is missing its \"id\""))?;
        let id = EdgeId::new(id)?;
        let source = vertex_list(rec.get("source"), "source")?;
        let range = vertex_list(rec.get("range"), "range")?;
        if edges.insert(id.clone(), Edge { source, range }).is_some() {
            return Err(Error::DuplicateId(id.to_string()));
        }
    }
    Ok(Hypergraph::new(vertices, edges))
}

fn vertex_list(value: Option<&Value>, field: &str) -> Result<BTreeSet<VertexId>> {
    let arr = value
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error(format!("edge is missing its {field:?} array")))?;
    let mut out = BTreeSet::new();
    for v in arr {
        let label = v
            .as_str()
            .ok_or_else(|| parse_error(format!("{field:?} members must be strings")))?;
        out.insert(VertexId::new(label)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::forbidden_catalog;

    #[test]
    fn canonical_g4_round_trips() {
        let g4 = forbidden_catalog()[3].clone();
        let text = serialize(&g4);
        let back = parse(&text).unwrap();
        assert_eq!(back, g4);
        // Canonical output is stable under re-serialization.
        assert_eq!(serialize(&back), text);
        assert!(text.ends_with("}\n"));
        assert!(!text.contains(" \n"));
    }

    #[test]
    fn out_of_order_input_is_recanonicalized() {
        let text = r#"{"vertices": ["w", "v"],
                       "edges": [{"id": "f", "source": ["w", "v"], "range": ["w"]},
                                 {"id": "e", "source": ["v", "w"], "range": []}]}"#;
        let h = parse(text).unwrap();
        let g3 = forbidden_catalog()[2].clone();
        assert_eq!(h, g3);
        assert_eq!(serialize(&h), serialize(&g3));
    }

    #[test]
    fn duplicate_edge_id_is_rejected() {
        let text = r#"{"vertices": ["v"],
                       "edges": [{"id": "e", "source": ["v"], "range": []},
                                 {"id": "e", "source": ["v"], "range": []}]}"#;
        assert!(matches!(parse(text), Err(Error::DuplicateId(_))));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("{\n  \"vertices\": [,]\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
