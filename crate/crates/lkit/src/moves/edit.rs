//! Low-level surgery on rotation systems shared by the moves.

use std::collections::BTreeSet;

use crate::chart::{validate, Basepoint, Chart, Dart, Edge, Label, Topology, Vertex, VertexKind};
use crate::error::{Error, Result};

pub(super) fn reject(msg: impl Into<String>) -> Error {
    Error::Move(msg.into())
}

pub(super) fn push_edge(c: &mut Chart, label: Label) -> usize {
    let id = c.next_edge_id();
    c.edges.push(Edge { id, label });
    c.edges.len() - 1
}

pub(super) fn push_vertex(c: &mut Chart, kind: VertexKind, rotation: Vec<Dart>, marked_at: Option<usize>) -> usize {
    let id = c.next_vertex_id();
    c.vertices.push(Vertex { id, kind, rotation, marked_at });
    c.vertices.len() - 1
}

/// Vertex index and rotation position of a dart.
pub(super) fn locate(c: &Chart, d: Dart) -> Option<(usize, usize)> {
    c.vertices.iter().enumerate().find_map(|(vi, v)| v.rotation.iter().position(|&x| x == d).map(|p| (vi, p)))
}

pub(super) fn insert_at(c: &mut Chart, vi: usize, pos: usize, d: Dart) {
    let v = &mut c.vertices[vi];
    v.rotation.insert(pos, d);
    if let Some(m) = v.marked_at.as_mut() {
        if *m >= pos {
            *m += 1;
        }
    }
}

/// Places `new` inside the corner named by `d`.
pub(super) fn insert_after(c: &mut Chart, d: Dart, new: Dart) -> Result<()> {
    let (vi, p) = locate(c, d).ok_or_else(|| reject(format!("dart {d} is not at any vertex")))?;
    insert_at(c, vi, p + 1, new);
    Ok(())
}

/// The first dart of `d`'s face, walking forward from `d`, that is not gone.
pub(super) fn surviving_corner(c: &Chart, t: &Topology, d: Dart, gone: &dyn Fn(Dart) -> bool) -> Option<Dart> {
    let mut x = d;
    loop {
        if !gone(x) {
            return Some(x);
        }
        x = t.phi(c, x);
        if x == d {
            return None;
        }
    }
}

/// Deletes edges and vertices given by index, keeping the order of what
/// remains. The basepoint moves to `bp` (a surviving dart of the old
/// numbering), or to dart 0 when there is none.
pub(super) fn remove(mut c: Chart, edges: &BTreeSet<usize>, vertices: &BTreeSet<usize>, bp: Option<Dart>) -> Chart {
    const GONE: usize = usize::MAX;
    let mut map = vec![GONE; c.dart_count()];
    let mut next = 0;
    for k in 0..c.edges.len() {
        if !edges.contains(&k) {
            map[2 * k] = 2 * next;
            map[2 * k + 1] = 2 * next + 1;
            next += 1;
        }
    }
    let mut k = 0;
    c.edges.retain(|_| {
        k += 1;
        !edges.contains(&(k - 1))
    });
    let mut i = 0;
    c.vertices.retain(|_| {
        i += 1;
        !vertices.contains(&(i - 1))
    });
    for v in &mut c.vertices {
        let old = std::mem::take(&mut v.rotation);
        let marked = v.marked_at.map(|p| old[..p.min(old.len())].iter().filter(|&&d| map[d] != GONE).count());
        v.rotation = old.into_iter().filter(|&d| map[d] != GONE).map(|d| map[d]).collect();
        let n = v.rotation.len();
        v.marked_at = marked.map(|p| if n == 0 { 0 } else { p % n });
    }
    if c.basepoint.is_some() {
        c.basepoint = Some(match bp.map(|d| map[d]) {
            _ if c.edges.is_empty() => Basepoint::Bare,
            Some(d) if d != GONE => Basepoint::Corner(d),
            _ => Basepoint::Corner(0),
        });
    }
    c
}

pub(super) fn require_valid(c: &Chart) -> Result<()> {
    validate(c).into_result().map(|_| ())
}

/// Canonicalizes the basepoint and insists that the result is a valid chart.
pub(super) fn finish(mut c: Chart) -> Result<Chart> {
    c.canonicalize_basepoint().map_err(|e| reject(format!("result is not a map: {e}")))?;
    let r = validate(&c);
    if !r.ok {
        let msgs: Vec<String> = r.diagnostics.iter().map(|d| format!("{}: {}", d.entity, d.message)).collect();
        return Err(reject(format!("result is invalid: {}", msgs.join("; "))));
    }
    Ok(c)
}

pub(super) fn bp_dart(c: &Chart) -> Option<Dart> {
    match c.basepoint {
        Some(Basepoint::Corner(d)) => Some(d),
        _ => None,
    }
}
