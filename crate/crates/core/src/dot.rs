//! Graphviz export.
//!
//! Hyperedges are rendered as dedicated box nodes: undirected incidence
//! lines run from each source vertex to the edge node, and directed arcs
//! from the edge node to each range vertex, matching the source-ellipse
//! and arrow style of hand-drawn hypergraph sketches.

use crate::hypergraph::Hypergraph;
use crate::ops::{replay, Trace};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

fn body(h: &Hypergraph, out: &mut String, indent: &str, prefix: &str) {
    for v in h.vertices() {
        out.push_str(&format!(
            "{indent}{} [shape=circle, label={}];\n",
            quote(&format!("{prefix}v:{v}")),
            quote(v.as_str())
        ));
    }
    for (id, edge) in h.edges() {
        let node = quote(&format!("{prefix}e:{id}"));
        out.push_str(&format!(
            "{indent}{node} [shape=box, style=rounded, label={}];\n",
            quote(id.as_str())
        ));
        for v in &edge.source {
            out.push_str(&format!(
                "{indent}{} -> {node} [dir=none];\n",
                quote(&format!("{prefix}v:{v}"))
            ));
        }
        for v in &edge.range {
            out.push_str(&format!(
                "{indent}{node} -> {};\n",
                quote(&format!("{prefix}v:{v}"))
            ));
        }
    }
}

/// A single hypergraph as a `digraph`.
pub fn hypergraph_to_dot(h: &Hypergraph) -> String {
    let mut out = String::from("digraph hypergraph {\n");
    body(h, &mut out, "  ", "");
    out.push_str("}\n");
    out
}

/// A trace as one cluster per step, each showing the hypergraph after that
/// step. Replays the trace; fails if the trace does not replay.
pub fn trace_to_dot(trace: &Trace) -> crate::error::Result<String> {
    let mut out = String::from("digraph trace {\n");
    let mut state = trace.start.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        state = replay(&state, std::slice::from_ref(step))?;
        out.push_str(&format!("  subgraph cluster_{i} {{\n"));
        out.push_str(&format!("    label={};\n", quote(&step.to_string())));
        body(&state, &mut out, "    ", &format!("s{i}:"));
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    Ok(out)
}
