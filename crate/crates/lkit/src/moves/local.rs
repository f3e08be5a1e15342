//! Moves that add, remove or reconnect pieces inside a disk free of black
//! vertices, plus the basepoint conjugation and storage relabeling.

use std::collections::BTreeSet;

use super::edit::{
    bp_dart, finish, insert_after, locate, push_edge, push_vertex, reject, remove, require_valid, surviving_corner,
};
use crate::chart::{alpha, edge_of, is_head, Basepoint, Chart, Dart, Flavor, Label, VertexKind};
use crate::error::{Error, Result};
use crate::words::{expand_relator, RelatorId};

fn check_orientation(o: i8) -> Result<()> {
    if o == 1 || o == -1 {
        Ok(())
    } else {
        Err(reject(format!("orientation {o} is not ±1")))
    }
}

/// Adds a hoop in `face` and returns it with its inner corner.
fn add_hoop(c: &Chart, face: usize, label: &Label, orientation: i8) -> Result<(Chart, Dart, Dart)> {
    require_valid(c)?;
    check_orientation(orientation)?;
    if label.is_ghost() {
        return Err(reject("a hoop needs a labeled edge"));
    }
    let mut out = c.clone();
    let h = push_edge(&mut out, label.clone());
    let (tail, head) = (2 * h, 2 * h + 1);
    let inner = if orientation > 0 { tail } else { head };
    if c.edges.is_empty() {
        if face != 0 {
            return Err(reject(format!("the empty chart has only face 0, not {face}")));
        }
        push_vertex(&mut out, VertexKind::Transparent, vec![tail, head], None);
        out.basepoint = Some(Basepoint::Corner(alpha(inner)));
        return Ok((out, h, inner));
    }
    let t = c.topology()?;
    let corner = *t.faces.get(face).ok_or_else(|| reject(format!("face {face} does not exist")))?.first().expect("faces are nonempty");
    let gh = push_edge(&mut out, Label::Ghost);
    insert_after(&mut out, corner, 2 * gh)?;
    let loop_darts = if orientation > 0 { [tail, head] } else { [head, tail] };
    push_vertex(&mut out, VertexKind::Transparent, vec![2 * gh + 1, loop_darts[0], loop_darts[1]], None);
    Ok((out, h, inner))
}

pub(super) fn hoop_birth(c: &Chart, face: usize, label: &Label, orientation: i8) -> Result<Chart> {
    let (out, _, _) = add_hoop(c, face, label, orientation)?;
    finish(out)
}

/// The transparent vertex, inner corner and ghost (edge index) of a hoop edge.
struct Hoop {
    vertex: usize,
    inner: Dart,
    ghost: Option<usize>,
}

fn find_hoop(c: &Chart, k: usize, prefer_inner_not: Option<Dart>) -> Result<Hoop> {
    let id = c.edges[k].id;
    if c.edges[k].label.is_ghost() {
        return Err(reject(format!("edge {id} is a ghost edge, not a hoop")));
    }
    let t = c.topology()?;
    let vi = t.vertex_of[2 * k];
    if t.vertex_of[2 * k + 1] != vi || c.vertices[vi].kind != VertexKind::Transparent {
        return Err(reject(format!("edge {id} is not a loop at a transparent vertex")));
    }
    let rot = &c.vertices[vi].rotation;
    let ghosts: Vec<Dart> = rot.iter().copied().filter(|&d| edge_of(d) != k).collect();
    if ghosts.len() > 1 {
        return Err(reject(format!("hoop {id} is tied to {} ghost edges", ghosts.len())));
    }
    let candidates: Vec<Dart> = [2 * k + 1, 2 * k].into_iter().filter(|&d| t.sigma(c, d) == alpha(d)).collect();
    let inner = match (candidates.len(), prefer_inner_not) {
        (1, _) => candidates[0],
        (2, Some(bp)) if candidates.contains(&bp) => alpha(bp),
        (2, _) => 2 * k + 1,
        _ => return Err(reject(format!("hoop {id} bounds a nonempty region"))),
    };
    Ok(Hoop { vertex: vi, inner, ghost: ghosts.first().map(|&d| edge_of(d)) })
}

pub(super) fn hoop_death(c: &Chart, hoop: usize) -> Result<Chart> {
    require_valid(c)?;
    let k = c.edge_index(hoop).map_err(|e| reject(e.to_string()))?;
    let bp = bp_dart(c);
    let hp = find_hoop(c, k, bp)?;
    if bp == Some(hp.inner) {
        return Err(reject(format!("the basepoint lies inside hoop {hoop}; use a conjugacy move")));
    }
    let mut edges = BTreeSet::from([k]);
    edges.extend(hp.ghost);
    let t = c.topology()?;
    let gone = |d: Dart| edges.contains(&edge_of(d));
    let new_bp = bp.and_then(|d| surviving_corner(c, &t, d, &gone));
    finish(remove(c.clone(), &edges, &BTreeSet::from([hp.vertex]), new_bp))
}

pub(super) fn conjugacy_birth(c: &Chart, label: &Label, orientation: i8) -> Result<Chart> {
    let face = match c.basepoint {
        Some(Basepoint::Bare) => 0,
        Some(Basepoint::Corner(_)) => c.basepoint_face()?.expect("corner basepoint has a face"),
        None => return Err(reject("conjugacy moves need a basepoint")),
    };
    let (mut out, _, inner) = add_hoop(c, face, label, orientation)?;
    out.basepoint = Some(Basepoint::Corner(inner));
    finish(out)
}

pub(super) fn conjugacy_death(c: &Chart) -> Result<Chart> {
    require_valid(c)?;
    let bp = bp_dart(c).ok_or_else(|| reject("conjugacy death needs a basepoint at a hoop"))?;
    let k = edge_of(bp);
    let hp = find_hoop(c, k, None).map_err(|e| reject(format!("basepoint is not inside a hoop: {e}")))?;
    let t = c.topology()?;
    if t.sigma(c, bp) != alpha(bp) {
        return Err(reject("basepoint is not inside a hoop"));
    }
    let mut edges = BTreeSet::from([k]);
    edges.extend(hp.ghost);
    let new_bp = hp.ghost.map(|gk| {
        let at_hoop = if t.vertex_of[2 * gk] == hp.vertex { 2 * gk } else { 2 * gk + 1 };
        t.sigma_inv(c, alpha(at_hoop))
    });
    finish(remove(c.clone(), &edges, &BTreeSet::from([hp.vertex]), new_bp))
}

pub(super) fn white_pair_birth(c: &Chart, relator: RelatorId, sign: i8, face: usize) -> Result<Chart> {
    require_valid(c)?;
    if c.flavor == Flavor::Luo || relator.is_luo() {
        return Err(Error::Unsupported("white pair births are implemented for Wajnryb charts only".into()));
    }
    check_orientation(sign)?;
    relator.check(c.g)?;
    let r = expand_relator(relator, c.g)?;
    let x = if sign > 0 { r.inverse() } else { r };
    let corner = if c.edges.is_empty() {
        if face != 0 {
            return Err(reject(format!("the empty chart has only face 0, not {face}")));
        }
        None
    } else {
        let t = c.topology()?;
        Some(t.faces.get(face).ok_or_else(|| reject(format!("face {face} does not exist")))?[0])
    };
    let mut out = c.clone();
    let darts: Vec<Dart> = x
        .letters()
        .iter()
        .map(|l| {
            let k = push_edge(&mut out, Label::Gen(l.index));
            if l.exp > 0 {
                2 * k + 1
            } else {
                2 * k
            }
        })
        .collect();
    let mut u = darts.clone();
    let u2: Vec<Dart> = darts.iter().rev().map(|&d| alpha(d)).collect();
    match corner {
        Some(d0) => {
            let gh = push_edge(&mut out, Label::Ghost);
            insert_after(&mut out, d0, 2 * gh)?;
            u.push(2 * gh + 1);
        }
        None => out.basepoint = Some(Basepoint::Corner(*darts.last().expect("relators are nonempty"))),
    }
    push_vertex(&mut out, VertexKind::White { relator, sign }, u, Some(0));
    push_vertex(&mut out, VertexKind::White { relator, sign: -sign }, u2, Some(0));
    finish(out)
}

pub(super) fn white_pair_death(c: &Chart, v1: usize, v2: usize) -> Result<Chart> {
    require_valid(c)?;
    let a = c.vertex_index(v1).map_err(|e| reject(e.to_string()))?;
    let b = c.vertex_index(v2).map_err(|e| reject(e.to_string()))?;
    let (VertexKind::White { relator: r1, sign: s1 }, VertexKind::White { relator: r2, sign: s2 }) =
        (&c.vertices[a].kind, &c.vertices[b].kind)
    else {
        return Err(reject(format!("vertices {v1} and {v2} are not both white")));
    };
    if a == b || r1 != r2 || s1 != &-s2 {
        return Err(reject(format!("vertices {v1} and {v2} are not a mirror pair")));
    }
    let t = c.topology()?;
    let solid: Vec<Dart> = c.vertices[a].rotation.iter().copied().filter(|&d| !c.label_of(d).is_ghost()).collect();
    let solid_b = c.vertices[b].rotation.iter().filter(|&&d| !c.label_of(d).is_ghost()).count();
    if solid.iter().any(|&d| t.vertex_of[alpha(d)] != b) || solid_b != solid.len() {
        return Err(reject(format!("vertices {v1} and {v2} have edges to other vertices")));
    }
    let ghosts: Vec<Dart> = [a, b]
        .iter()
        .flat_map(|&v| c.vertices[v].rotation.iter().copied())
        .filter(|&d| c.label_of(d).is_ghost())
        .collect();
    if ghosts.len() > 1 {
        return Err(reject(format!("vertices {v1} and {v2} carry {} ghost edges", ghosts.len())));
    }
    let n = solid.len();
    let bigon = |j: usize| {
        let (d, e) = (solid[j], solid[(j + 1) % n]);
        t.sigma(c, d) == e && t.sigma(c, alpha(e)) == alpha(d)
    };
    let open: Vec<usize> = (0..n).filter(|&j| !bigon(j)).collect();
    let bp = bp_dart(c);
    let bp_face = bp.map(|d| t.face_of[d]);
    let outer = match open.len() {
        1 => open[0],
        0 => (0..n)
            .find(|&j| Some(t.face_of[solid[j]]) == bp_face)
            .unwrap_or_else(|| (0..n).min_by_key(|&j| t.faces[t.face_of[solid[j]]][0]).expect("n > 0")),
        _ => return Err(reject(format!("the edges between {v1} and {v2} do not bound bigons"))),
    };
    if (0..n).any(|j| j != outer && Some(t.face_of[solid[j]]) == bp_face) {
        return Err(reject(format!("the basepoint lies between {v1} and {v2}")));
    }
    let mut edges: BTreeSet<usize> = solid.iter().map(|&d| edge_of(d)).collect();
    edges.extend(ghosts.iter().map(|&d| edge_of(d)));
    let gone = |d: Dart| edges.contains(&edge_of(d));
    let new_bp = bp.and_then(|d| surviving_corner(c, &t, d, &gone));
    finish(remove(c.clone(), &edges, &BTreeSet::from([a, b]), new_bp))
}

pub(super) fn channel_change(c: &Chart, edge1: usize, edge2: usize) -> Result<Chart> {
    require_valid(c)?;
    let k1 = c.edge_index(edge1).map_err(|e| reject(e.to_string()))?;
    let k2 = c.edge_index(edge2).map_err(|e| reject(e.to_string()))?;
    if k1 == k2 {
        return Err(reject(format!("channel change needs two different edges, got {edge1} twice")));
    }
    if c.edges[k1].label.is_ghost() || c.edges[k1].label != c.edges[k2].label {
        return Err(reject(format!("edges {edge1} and {edge2} do not carry the same label")));
    }
    let t = c.topology()?;
    let left = t.face_of[2 * k1] == t.face_of[2 * k2];
    let right = t.face_of[2 * k1 + 1] == t.face_of[2 * k2 + 1];
    if !left && !right {
        return Err(reject(format!("edges {edge1} and {edge2} do not face each other across a region")));
    }
    let mut out = c.clone();
    let (h1, h2) = (2 * k1 + 1, 2 * k2 + 1);
    let (p1, p2) = (locate(&out, h1).expect("dart placed"), locate(&out, h2).expect("dart placed"));
    out.vertices[p1.0].rotation[p1.1] = h2;
    out.vertices[p2.0].rotation[p2.1] = h1;
    let after = out.topology()?;
    if after.components > t.components {
        // Tie the two pieces together through the region they now share.
        let mut pairs = Vec::new();
        if right {
            pairs.push((2 * k1, 2 * k2));
        }
        if left {
            pairs.push((h1, h2));
        }
        let (x, y) = pairs
            .into_iter()
            .find(|&(x, y)| after.face_of[x] == after.face_of[y])
            .ok_or_else(|| reject("channel change splits the chart across different regions"))?;
        let gh = push_edge(&mut out, Label::Ghost);
        insert_after(&mut out, x, 2 * gh)?;
        insert_after(&mut out, y, 2 * gh + 1)?;
    }
    finish(out)
}

/// Reorders storage: edge `k` moves to slot `edges[k]`, vertex `i` to `vertices[i]`.
pub(super) fn relabel(c: &Chart, edges: &[usize], vertices: &[usize]) -> Result<Chart> {
    require_valid(c)?;
    let is_perm = |p: &[usize], n: usize| {
        let mut seen = vec![false; n];
        p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
    };
    if !is_perm(edges, c.edges.len()) {
        return Err(reject("edge relabeling is not a permutation of the edges"));
    }
    let identity: Vec<usize> = (0..c.vertices.len()).collect();
    let vertices = if vertices.is_empty() { &identity[..] } else { vertices };
    if !is_perm(vertices, c.vertices.len()) {
        return Err(reject("vertex relabeling is not a permutation of the vertices"));
    }
    let map = |d: Dart| 2 * edges[edge_of(d)] + usize::from(is_head(d));
    let mut out = c.clone();
    for (k, e) in c.edges.iter().enumerate() {
        out.edges[edges[k]] = e.clone();
    }
    for (i, v) in c.vertices.iter().enumerate() {
        let mut v = v.clone();
        v.rotation = v.rotation.iter().map(|&d| map(d)).collect();
        out.vertices[vertices[i]] = v;
    }
    if let Some(Basepoint::Corner(d)) = c.basepoint {
        out.basepoint = Some(Basepoint::Corner(map(d)));
    }
    finish(out)
}
