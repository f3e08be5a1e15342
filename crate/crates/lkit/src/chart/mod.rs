//! Charts as combinatorial maps.
//!
//! Edge `k` owns the darts `2k` (tail) and `2k + 1` (head), so the edge
//! involution is `d ^ 1`. Each vertex lists its darts counterclockwise. Faces
//! are the orbits of `φ = α ∘ σ`, where `σ` steps to the next dart
//! counterclockwise; the corner named by a dart `d` is the wedge between `d`
//! and `σ(d)`, and it lies in `face(d)`.
//!
//! Ghost edges carry no label. They tie components together and anchor hoops;
//! words and counts never see them, but they take part in the face structure.

pub mod builder;
mod counts;
pub mod dot;
mod hurwitz;
pub mod json;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{gen_to_twist, ClassTable};
use crate::words::{GenLetter, GenWord, RelatorId, TwistLetter, TwistWord, Word};

pub use counts::{edge_identity_check, sigma_chart, sigma_luo, sigma_luo_values, Counts};
pub use hurwitz::{derive_hurwitz, derive_hurwitz_seeded};
pub use validate::{validate, Diagnostic, ValidationReport, WhiteReading};
pub(crate) use validate::luo_matches;

pub type Dart = usize;

pub fn alpha(d: Dart) -> Dart {
    d ^ 1
}

pub fn is_head(d: Dart) -> bool {
    d & 1 == 1
}

pub fn edge_of(d: Dart) -> usize {
    d >> 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Wajnryb,
    Luo,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Gen(usize),
    /// A twist curve; the stored sign is always +1.
    Curve(TwistLetter),
    Ghost,
}

impl Label {
    pub fn curve(mut t: TwistLetter) -> Self {
        t.sign = 1;
        Label::Curve(t)
    }

    pub fn is_ghost(&self) -> bool {
        matches!(self, Label::Ghost)
    }

    /// Same curve: equal separating data and classes equal up to sign.
    pub fn same_curve(&self, other: &Label) -> bool {
        match (self, other) {
            (Label::Gen(a), Label::Gen(b)) => a == b,
            (Label::Curve(a), Label::Curve(b)) => {
                a.sep_genus == b.sep_genus
                    && (a.hclass == b.hclass || a.hclass.iter().zip(&b.hclass).all(|(x, y)| *x == -y))
            }
            _ => false,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Gen(i) => write!(f, "z{i}"),
            Label::Curve(t) => {
                let cls: Vec<String> = t.hclass.iter().map(|x| x.to_string()).collect();
                match t.sep_genus {
                    Some(h) => write!(f, "c[{}|h={h}]", cls.join(",")),
                    None => write!(f, "c[{}]", cls.join(",")),
                }
            }
            Label::Ghost => write!(f, "ghost"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BlackType {
    Ell0(usize),
    Ell(usize),
    /// Luo flavor: a single twist along the curve of the incident edge.
    Twist,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    White { relator: RelatorId, sign: i8 },
    Black { ty: BlackType, sign: i8 },
    Transparent,
}

impl VertexKind {
    pub fn is_white(&self) -> bool {
        matches!(self, VertexKind::White { .. })
    }

    pub fn is_black(&self) -> bool {
        matches!(self, VertexKind::Black { .. })
    }

    pub fn mirrored(&self) -> VertexKind {
        match self {
            VertexKind::White { relator, sign } => VertexKind::White { relator: *relator, sign: -sign },
            VertexKind::Black { ty, sign } => VertexKind::Black { ty: ty.clone(), sign: -sign },
            VertexKind::Transparent => VertexKind::Transparent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub kind: VertexKind,
    pub rotation: Vec<Dart>,
    pub marked_at: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basepoint {
    Corner(Dart),
    /// The chart has no darts; the basepoint is anywhere.
    Bare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub g: usize,
    pub base_genus: usize,
    /// Handles of the base surface that the map does not see.
    pub free_handles: usize,
    pub flavor: Flavor,
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
    pub basepoint: Option<Basepoint>,
}

/// A letter of a chart word: Wajnryb generators or Luo twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartWord {
    Gen(GenWord),
    Twist(TwistWord),
}

impl ChartWord {
    pub fn len(&self) -> usize {
        match self {
            ChartWord::Gen(w) => w.len(),
            ChartWord::Twist(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_twists(&self) -> TwistWord {
        match self {
            ChartWord::Gen(w) => {
                let table = ClassTable::standard(w.g());
                crate::symplectic::to_twists(w, &table).expect("table matches word genus")
            }
            ChartWord::Twist(w) => w.clone(),
        }
    }

    pub fn as_gen(&self) -> Option<&GenWord> {
        match self {
            ChartWord::Gen(w) => Some(w),
            ChartWord::Twist(_) => None,
        }
    }

    pub fn inverse(&self) -> ChartWord {
        match self {
            ChartWord::Gen(w) => ChartWord::Gen(w.inverse()),
            ChartWord::Twist(w) => ChartWord::Twist(w.inverse()),
        }
    }

    pub fn is_cyclic_permutation_of(&self, other: &ChartWord) -> bool {
        match (self, other) {
            (ChartWord::Gen(a), ChartWord::Gen(b)) => a.is_cyclic_permutation_of(b),
            (ChartWord::Twist(a), ChartWord::Twist(b)) => a.is_cyclic_permutation_of(b),
            _ => false,
        }
    }
}

impl fmt::Display for ChartWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartWord::Gen(w) => write!(f, "{w}"),
            ChartWord::Twist(w) => write!(f, "{w}"),
        }
    }
}

/// An oriented crossing of a path with an edge; `dir = +1` crosses from the
/// left of the edge to its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub edge: usize,
    pub dir: i8,
}

/// Derived incidence data of a chart.
#[derive(Clone, Debug)]
pub struct Topology {
    pub vertex_of: Vec<usize>,
    pub pos_of: Vec<usize>,
    pub face_of: Vec<usize>,
    /// φ-orbits, each starting at its smallest dart, sorted by that dart.
    pub faces: Vec<Vec<Dart>>,
    pub component_of_vertex: Vec<usize>,
    pub components: usize,
}

impl Topology {
    pub fn of(c: &Chart) -> Result<Topology> {
        let nd = 2 * c.edges.len();
        let mut vertex_of = vec![usize::MAX; nd];
        let mut pos_of = vec![usize::MAX; nd];
        for (vi, v) in c.vertices.iter().enumerate() {
            for (p, &d) in v.rotation.iter().enumerate() {
                if d >= nd {
                    return Err(Error::Chart(format!("vertex {} lists unknown dart {d}", v.id)));
                }
                if vertex_of[d] != usize::MAX {
                    let other = c.vertices[vertex_of[d]].id;
                    return Err(Error::Chart(format!("dart {d} appears at vertices {other} and {}", v.id)));
                }
                vertex_of[d] = vi;
                pos_of[d] = p;
            }
        }
        if let Some(d) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Chart(format!("dart {d} of edge {} is not at any vertex", c.edges[edge_of(d)].id)));
        }
        let sigma = |d: Dart| {
            let rot = &c.vertices[vertex_of[d]].rotation;
            rot[(pos_of[d] + 1) % rot.len()]
        };
        let mut face_of = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let fi = faces.len();
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = fi;
                orbit.push(d);
                d = alpha(sigma(d));
                if d == start {
                    break;
                }
            }
            faces.push(orbit);
        }
        let nv = c.vertices.len();
        let mut comp = vec![usize::MAX; nv];
        let mut components = 0;
        for s in 0..nv {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = components;
            while let Some(v) = stack.pop() {
                for &d in &c.vertices[v].rotation {
                    let w = vertex_of[alpha(d)];
                    if comp[w] == usize::MAX {
                        comp[w] = components;
                        stack.push(w);
                    }
                }
            }
            components += 1;
        }
        Ok(Topology { vertex_of, pos_of, face_of, faces, component_of_vertex: comp, components })
    }

    pub fn sigma(&self, c: &Chart, d: Dart) -> Dart {
        let rot = &c.vertices[self.vertex_of[d]].rotation;
        rot[(self.pos_of[d] + 1) % rot.len()]
    }

    pub fn sigma_inv(&self, c: &Chart, d: Dart) -> Dart {
        let rot = &c.vertices[self.vertex_of[d]].rotation;
        rot[(self.pos_of[d] + rot.len() - 1) % rot.len()]
    }

    pub fn phi(&self, c: &Chart, d: Dart) -> Dart {
        alpha(self.sigma(c, d))
    }

    /// Face count of the surface: disjoint components share their outer faces.
    pub fn surface_faces(&self) -> usize {
        if self.faces.is_empty() {
            1
        } else {
            self.faces.len() + 1 - self.components
        }
    }

    pub fn component_of_dart(&self, d: Dart) -> usize {
        self.component_of_vertex[self.vertex_of[d]]
    }

    /// The face each component presents to the others: that of its smallest dart.
    pub fn outer_faces(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.components];
        for (d, &v) in self.vertex_of.iter().enumerate() {
            let k = self.component_of_vertex[v];
            if out[k] == usize::MAX {
                out[k] = self.face_of[d];
            }
        }
        out
    }
}

impl Chart {
    pub fn empty(g: usize, flavor: Flavor) -> Self {
        Chart {
            g,
            base_genus: 0,
            free_handles: 0,
            flavor,
            edges: Vec::new(),
            vertices: Vec::new(),
            basepoint: Some(Basepoint::Bare),
        }
    }

    pub fn topology(&self) -> Result<Topology> {
        Topology::of(self)
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edge_index(&self, id: usize) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::Chart(format!("no edge with id {id}")))
    }

    pub fn vertex_index(&self, id: usize) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::Chart(format!("no vertex with id {id}")))
    }

    pub fn label_of(&self, d: Dart) -> &Label {
        &self.edges[edge_of(d)].label
    }

    pub fn next_edge_id(&self) -> usize {
        self.edges.iter().map(|e| e.id + 1).max().unwrap_or(0)
    }

    pub fn next_vertex_id(&self) -> usize {
        self.vertices.iter().map(|v| v.id + 1).max().unwrap_or(0)
    }

    /// Index of the face holding the basepoint, if one is set and the chart has darts.
    pub fn basepoint_face(&self) -> Result<Option<usize>> {
        match self.basepoint {
            Some(Basepoint::Corner(d)) => {
                let t = self.topology()?;
                if d >= self.dart_count() {
                    return Err(Error::Chart(format!("basepoint dart {d} does not exist")));
                }
                Ok(Some(t.face_of[d]))
            }
            _ => Ok(None),
        }
    }

    /// Moves the basepoint to the smallest dart of its face.
    pub fn canonicalize_basepoint(&mut self) -> Result<()> {
        if let Some(Basepoint::Corner(d)) = self.basepoint {
            let t = self.topology()?;
            self.basepoint = Some(Basepoint::Corner(t.faces[t.face_of[d]][0]));
        } else if self.basepoint == Some(Basepoint::Bare) && !self.edges.is_empty() {
            self.basepoint = Some(Basepoint::Corner(0));
        }
        Ok(())
    }

    pub fn set_basepoint_face(&mut self, face: usize) -> Result<()> {
        if self.edges.is_empty() {
            if face != 0 {
                return Err(Error::Chart(format!("empty chart has only face 0, not {face}")));
            }
            self.basepoint = Some(Basepoint::Bare);
            return Ok(());
        }
        let t = self.topology()?;
        let f = t.faces.get(face).ok_or_else(|| Error::Chart(format!("no face {face}")))?;
        self.basepoint = Some(Basepoint::Corner(f[0]));
        Ok(())
    }

    pub(crate) fn class_table(&self) -> ClassTable {
        ClassTable::standard(self.g)
    }

    /// The twist letter read when crossing dart `d`'s edge with exponent `exp`.
    pub(crate) fn twist_letter(&self, table: &ClassTable, label: &Label, exp: i8) -> Option<TwistLetter> {
        match label {
            Label::Gen(i) => Some(gen_to_twist(&GenLetter::new(*i, exp), table)),
            Label::Curve(t) => Some(TwistLetter { sign: exp, ..t.clone() }),
            Label::Ghost => None,
        }
    }

    pub(crate) fn word_from(&self, items: &[(Label, i8)]) -> Result<ChartWord> {
        match self.flavor {
            Flavor::Wajnryb => {
                let mut ls = Vec::with_capacity(items.len());
                for (label, e) in items {
                    match label {
                        Label::Gen(i) => ls.push(GenLetter::new(*i, *e)),
                        other => return Err(Error::Chart(format!("label {other} in a Wajnryb chart"))),
                    }
                }
                Ok(ChartWord::Gen(Word::new(self.g, ls)?))
            }
            Flavor::Luo => {
                let mut ls = Vec::with_capacity(items.len());
                for (label, e) in items {
                    match label {
                        Label::Curve(t) => ls.push(TwistLetter { sign: *e, ..t.clone() }),
                        other => return Err(Error::Chart(format!("label {other} in a Luo chart"))),
                    }
                }
                Ok(ChartWord::Twist(Word::new(self.g, ls)?))
            }
        }
    }

    /// Counterclockwise readings of the non-ghost darts at a vertex, from position 0.
    pub(crate) fn meridian_items(&self, v: usize) -> Vec<(Label, i8)> {
        self.vertices[v]
            .rotation
            .iter()
            .filter(|&&d| !self.label_of(d).is_ghost())
            .map(|&d| (self.label_of(d).clone(), if is_head(d) { 1 } else { -1 }))
            .collect()
    }

    /// Edges as drawn: strands through transparent vertices count once and
    /// closed hoops count once.
    pub fn drawn_edge_count(&self) -> usize {
        let solid = self.edges.iter().filter(|e| !e.label.is_ghost()).count();
        let transparent = self.vertices.iter().filter(|v| v.kind == VertexKind::Transparent).count();
        solid + self.hoop_cycles() - transparent
    }

    /// Cycles of solid edges all of whose vertices are transparent.
    fn hoop_cycles(&self) -> usize {
        let Ok(t) = self.topology() else { return 0 };
        let mut seen = vec![false; self.edges.len()];
        let mut cycles = 0;
        for (k, e) in self.edges.iter().enumerate() {
            if seen[k] || e.label.is_ghost() {
                continue;
            }
            let mut cur = k;
            let mut closed = true;
            loop {
                seen[cur] = true;
                let v = &self.vertices[t.vertex_of[2 * cur + 1]];
                if v.kind != VertexKind::Transparent {
                    closed = false;
                    break;
                }
                let next = v.rotation.iter().find(|&&d| !is_head(d) && !self.label_of(d).is_ghost());
                match next {
                    Some(&d) if edge_of(d) == k => break,
                    Some(&d) if !seen[edge_of(d)] => cur = edge_of(d),
                    _ => {
                        closed = false;
                        break;
                    }
                }
            }
            if closed {
                cycles += 1;
            }
        }
        cycles
    }

    /// Orientation-reversed chart: rotations reversed, edges flipped, signs negated.
    pub fn mirror(&self) -> Chart {
        let topo = self.topology().ok();
        let basepoint = match (self.basepoint, topo) {
            (Some(Basepoint::Corner(d)), Some(t)) => Some(Basepoint::Corner(alpha(t.sigma(self, d)))),
            (bp, _) => bp,
        };
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let n = v.rotation.len();
                Vertex {
                    id: v.id,
                    kind: v.kind.mirrored(),
                    rotation: v.rotation.iter().rev().map(|&d| alpha(d)).collect(),
                    marked_at: v.marked_at.map(|p| n - 1 - p),
                }
            })
            .collect();
        let mut m = Chart { vertices, basepoint, ..self.clone() };
        let _ = m.canonicalize_basepoint();
        m
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter().filter(|v| v.kind.is_black())
    }
}

/// Reading from the marked dart, or from the lexicographically least rotation.
pub fn meridian_word(c: &Chart, vertex_id: usize) -> Result<ChartWord> {
    let v = c.vertex_index(vertex_id)?;
    let vert = &c.vertices[v];
    if vert.kind == VertexKind::Transparent {
        return Err(Error::Chart(format!("transparent vertex {vertex_id} has no meridian type")));
    }
    let items = c.meridian_items(v);
    let word = c.word_from(&items)?;
    let start = match vert.marked_at {
        Some(p) => {
            let p = p.min(vert.rotation.len().saturating_sub(1));
            vert.rotation[..p].iter().filter(|&&d| !c.label_of(d).is_ghost()).count()
        }
        None => least_rotation(&word),
    };
    Ok(match word {
        ChartWord::Gen(w) => ChartWord::Gen(w.rotate(start)),
        ChartWord::Twist(w) => ChartWord::Twist(w.rotate(start)),
    })
}

fn least_rotation(w: &ChartWord) -> usize {
    fn best<T: Ord>(ls: &[T]) -> usize {
        let n = ls.len();
        (0..n)
            .min_by(|&a, &b| {
                let ka = ls[a..].iter().chain(&ls[..a]);
                let kb = ls[b..].iter().chain(&ls[..b]);
                ka.cmp(kb)
            })
            .unwrap_or(0)
    }
    match w {
        ChartWord::Gen(w) => best(w.letters()),
        ChartWord::Twist(w) => best(w.letters()),
    }
}

pub fn intersection_word(c: &Chart, crossings: &[Crossing]) -> Result<ChartWord> {
    let mut items = Vec::with_capacity(crossings.len());
    for x in crossings {
        let k = c.edge_index(x.edge)?;
        if x.dir != 1 && x.dir != -1 {
            return Err(Error::Param(format!("crossing direction {} is not ±1", x.dir)));
        }
        let label = &c.edges[k].label;
        if !label.is_ghost() {
            items.push((label.clone(), x.dir));
        }
    }
    c.word_from(&items)
}

/// Expected counterclockwise meridian of a black vertex.
pub(crate) fn black_word(c: &Chart, ty: &BlackType, sign: i8) -> Result<Option<GenWord>> {
    let w = match ty {
        BlackType::Ell0(i) => GenWord::from_pairs(c.g, &[(*i, 1)])?,
        BlackType::Ell(h) => crate::words::expand_derived(crate::words::Derived::Ell(*h), c.g)?,
        BlackType::Twist => return Ok(None),
    };
    Ok(Some(if sign > 0 { w } else { w.inverse() }))
}

pub(crate) fn black_letter(c: &Chart, v: usize) -> Option<TwistLetter> {
    let VertexKind::Black { ty, sign } = &c.vertices[v].kind else { return None };
    match ty {
        BlackType::Ell0(i) => Some(gen_to_twist(&GenLetter::new(*i, *sign), &c.class_table())),
        BlackType::Ell(h) => Some(TwistLetter::separating(*sign, c.g, *h)),
        BlackType::Twist => {
            let d = *c.vertices[v].rotation.iter().find(|&&d| !c.label_of(d).is_ghost())?;
            match c.label_of(d) {
                Label::Curve(t) => Some(TwistLetter { sign: *sign, ..t.clone() }),
                _ => None,
            }
        }
    }
}

/// Signed white-vertex counts per relator.
pub(crate) fn white_tally(c: &Chart) -> BTreeMap<RelatorId, i64> {
    let mut out = BTreeMap::new();
    for v in &c.vertices {
        if let VertexKind::White { relator, sign } = v.kind {
            *out.entry(relator).or_insert(0) += sign as i64;
        }
    }
    out
}
