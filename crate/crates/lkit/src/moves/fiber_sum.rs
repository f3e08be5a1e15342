//! Fiber sums: the two charts side by side on a connected-sum base, with
//! one hoop on the tube for each letter of the gluing word.

use super::edit::{bp_dart, finish, insert_after, push_edge, push_vertex, require_valid};
use crate::chart::{Basepoint, Chart, ChartWord, Dart, Label, VertexKind};
use crate::error::{Error, Result};

/// `left #_w right`. Walking from the left basepoint to the right chart
/// crosses the tube hoops in order, reading `w`.
pub fn fiber_sum(left: &Chart, right: &Chart, tube: &ChartWord) -> Result<Chart> {
    if left.g != right.g || left.flavor != right.flavor {
        return Err(Error::Mismatch(format!(
            "fiber sum of a g={} {:?} chart with a g={} {:?} chart",
            left.g, left.flavor, right.g, right.flavor
        )));
    }
    require_valid(left)?;
    require_valid(right)?;
    let labels: Vec<(Label, i8)> = match (left.flavor, tube) {
        (_, w) if w.is_empty() => Vec::new(),
        (crate::chart::Flavor::Wajnryb, ChartWord::Gen(w)) => {
            w.letters().iter().map(|l| (Label::Gen(l.index), l.exp)).collect()
        }
        (crate::chart::Flavor::Wajnryb, ChartWord::Twist(_)) => {
            return Err(Error::Mismatch("a Wajnryb fiber sum needs a tube word in the generators".into()));
        }
        (crate::chart::Flavor::Luo, w) => {
            w.to_twists().letters().iter().map(|t| (Label::curve(t.clone()), t.sign)).collect()
        }
    };
    if !tube.is_empty() && tube.to_twists().g() != left.g {
        return Err(Error::Mismatch("tube word has a different genus".into()));
    }

    let mut out = left.clone();
    out.base_genus = left.base_genus + right.base_genus;
    out.free_handles = left.free_handles + right.free_handles;
    let shift = 2 * left.edges.len();
    let (edge_id0, vertex_id0) = (left.next_edge_id(), left.next_vertex_id());
    out.edges.extend(right.edges.iter().map(|e| crate::chart::Edge { id: e.id + edge_id0, ..e.clone() }));
    out.vertices.extend(right.vertices.iter().map(|v| crate::chart::Vertex {
        id: v.id + vertex_id0,
        rotation: v.rotation.iter().map(|d| d + shift).collect(),
        ..v.clone()
    }));
    let left_bp = if left.edges.is_empty() { None } else { bp_dart(left) };
    let right_bp = if right.edges.is_empty() { None } else { bp_dart(right).map(|d| d + shift) };
    if !left.edges.is_empty() && left_bp.is_none() || !right.edges.is_empty() && right_bp.is_none() {
        return Err(Error::Mismatch("fiber sums need a basepoint on both charts".into()));
    }

    // The chain of attachment points: left corner, hoops, right corner.
    let mut prev: Option<Dart> = left_bp;
    let mut new_bp: Option<Dart> = left_bp;
    for (label, e) in labels {
        let h = push_edge(&mut out, label);
        let (x, y) = if e > 0 { (2 * h + 1, 2 * h) } else { (2 * h, 2 * h + 1) };
        let mut rotation = Vec::with_capacity(4);
        if let Some(p) = prev {
            let gk = push_edge(&mut out, Label::Ghost);
            insert_after(&mut out, p, 2 * gk)?;
            rotation.push(2 * gk + 1);
        }
        rotation.push(x);
        rotation.push(y);
        // The right-hand ghost slots in between x and y once it exists.
        push_vertex(&mut out, VertexKind::Transparent, rotation, None);
        if new_bp.is_none() {
            new_bp = Some(y);
        }
        prev = Some(x);
    }
    if let (Some(p), Some(r)) = (prev, right_bp) {
        let gk = push_edge(&mut out, Label::Ghost);
        insert_after(&mut out, p, 2 * gk)?;
        insert_after(&mut out, r, 2 * gk + 1)?;
    }
    let new_bp = new_bp.or(right_bp);
    out.basepoint = Some(match new_bp {
        Some(d) => Basepoint::Corner(d),
        None => Basepoint::Bare,
    });
    finish(out)
}
