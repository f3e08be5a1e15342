//! Orientation-preserving isomorphism of charts with basepoint.

use std::collections::VecDeque;

use crate::chart::json::kind_to_strings;
use crate::chart::{alpha, is_head, Chart, Dart, Topology};

type Code = Vec<(usize, usize, bool, String, String)>;

/// Breadth-first code of the component of `root`, numbering darts in order of discovery.
fn code_from(c: &Chart, t: &Topology, root: Dart) -> Code {
    let nd = c.dart_count();
    let mut num = vec![usize::MAX; nd];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([root]);
    num[root] = 0;
    order.push(root);
    while let Some(d) = queue.pop_front() {
        for x in [t.sigma(c, d), alpha(d)] {
            if num[x] == usize::MAX {
                num[x] = order.len();
                order.push(x);
                queue.push_back(x);
            }
        }
    }
    order
        .iter()
        .map(|&d| {
            let (kind, ty) = kind_to_strings(&c.vertices[t.vertex_of[d]].kind);
            let vertex = format!("{kind}:{}", ty.unwrap_or_default());
            (num[t.sigma(c, d)], num[alpha(d)], is_head(d), c.label_of(d).to_string(), vertex)
        })
        .collect()
}

/// Canonical form: the basepoint component's least code over corners of the
/// basepoint face, then the other components' least codes, sorted.
fn canonical(c: &Chart) -> Option<(Option<Code>, Vec<Code>)> {
    let t = c.topology().ok()?;
    let bp = c.basepoint_face().ok()?;
    let root_comp = bp.map(|f| t.component_of_dart(t.faces[f][0]));
    let root = bp.map(|f| t.faces[f].iter().map(|&d| code_from(c, &t, d)).min().expect("faces are nonempty"));
    let mut others: Vec<Code> = (0..t.components)
        .filter(|&k| Some(k) != root_comp)
        .map(|k| {
            (0..c.dart_count())
                .filter(|&d| t.component_of_dart(d) == k)
                .map(|d| code_from(c, &t, d))
                .min()
                .unwrap_or_default()
        })
        .collect();
    others.sort();
    Some((root, others))
}

pub fn isomorphic(a: &Chart, b: &Chart) -> bool {
    if (a.g, a.base_genus, a.free_handles, a.flavor) != (b.g, b.base_genus, b.free_handles, b.flavor) {
        return false;
    }
    if a.edges.len() != b.edges.len() || a.vertices.len() != b.vertices.len() {
        return false;
    }
    match (canonical(a), canonical(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}
