use std::fmt::Write;

use super::json::kind_to_strings;
use super::{Chart, Label, VertexKind};

pub fn to_dot(c: &Chart) -> String {
    let t = c.topology().ok();
    let mut s = String::new();
    let _ = writeln!(s, "digraph chart {{");
    let _ = writeln!(s, "  // g={} base_genus={} flavor={:?}", c.g, c.base_genus, c.flavor);
    for v in &c.vertices {
        let (_, ty) = kind_to_strings(&v.kind);
        let style = match v.kind {
            VertexKind::White { .. } => "shape=box",
            VertexKind::Black { .. } => "shape=circle, style=filled, fillcolor=black, fontcolor=white",
            VertexKind::Transparent => "shape=point",
        };
        let label = ty.unwrap_or_default();
        let _ = writeln!(s, "  v{} [{style}, label=\"{label}\"];", v.id);
    }
    if let Some(t) = t {
        for (k, e) in c.edges.iter().enumerate() {
            let tail = c.vertices[t.vertex_of[2 * k]].id;
            let head = c.vertices[t.vertex_of[2 * k + 1]].id;
            let attrs = match &e.label {
                Label::Ghost => "style=dotted, arrowhead=none".to_string(),
                l => format!("label=\"{l}\""),
            };
            let _ = writeln!(s, "  v{tail} -> v{head} [{attrs}, id=\"e{}\"];", e.id);
        }
    }
    s.push_str("}\n");
    s
}
