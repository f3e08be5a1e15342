//! Charts drawn as planar tangles, one horizontal slice at a time.
//!
//! The builder keeps the row of strands crossing the current height, left to
//! right. A strand "reads" the signed letter met when a path crosses it from
//! left to right, so an upward-pointing edge reads `+label`. Cups and caps
//! bend edges; vertices consume strands from below and emit strands above.
//! The region left of every strand is the outer face.

use super::{Basepoint, Chart, Edge, Flavor, Label, Vertex, VertexKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Open,
    At { vertex: usize, slot: usize },
    Link { seg: usize, head: bool },
}

#[derive(Clone, Debug)]
struct Seg {
    label: Label,
    tail: End,
    head: End,
}

#[derive(Clone, Copy, Debug)]
struct Strand {
    seg: usize,
    /// Whether the open end on top is the segment's head.
    head: bool,
}

#[derive(Clone, Debug)]
struct Pending {
    kind: VertexKind,
    slots: usize,
}

#[derive(Clone, Debug)]
pub struct Builder {
    g: usize,
    flavor: Flavor,
    segs: Vec<Seg>,
    strands: Vec<Strand>,
    vertices: Vec<Pending>,
    outer: Option<(usize, usize)>,
}

/// A chart together with the edge each builder segment ended up in.
#[derive(Clone, Debug)]
pub struct Built {
    pub chart: Chart,
    pub seg_edge: Vec<usize>,
}

impl Builder {
    pub fn new(g: usize, flavor: Flavor) -> Self {
        Builder { g, flavor, segs: Vec::new(), strands: Vec::new(), vertices: Vec::new(), outer: None }
    }

    pub fn width(&self) -> usize {
        self.strands.len()
    }

    /// The signed letters of the current row.
    pub fn row(&self) -> Vec<(Label, i8)> {
        self.strands.iter().map(|s| (self.segs[s.seg].label.clone(), if s.head { 1 } else { -1 })).collect()
    }

    fn check_pos(&self, pos: usize, k: usize) -> Result<()> {
        if pos + k > self.strands.len() {
            return Err(Error::Param(format!("strands {pos}..{} do not exist (width {})", pos + k, self.width())));
        }
        Ok(())
    }

    /// A U-shaped edge at `pos`; its left strand reads `label^sign`. Returns the segment.
    pub fn cup(&mut self, pos: usize, label: Label, sign: i8) -> Result<usize> {
        self.check_pos(pos, 0)?;
        let seg = self.segs.len();
        self.segs.push(Seg { label, tail: End::Open, head: End::Open });
        let up = sign > 0;
        self.strands.splice(pos..pos, [Strand { seg, head: up }, Strand { seg, head: !up }]);
        Ok(seg)
    }

    /// Joins strands `pos` and `pos + 1` over the top.
    pub fn cap(&mut self, pos: usize) -> Result<()> {
        self.check_pos(pos, 2)?;
        let (l, r) = (self.strands[pos], self.strands[pos + 1]);
        if self.segs[l.seg].label != self.segs[r.seg].label {
            return Err(Error::Param(format!("cap at {pos} joins different labels")));
        }
        if l.head == r.head {
            return Err(Error::Param(format!("cap at {pos} joins strands of clashing orientation")));
        }
        if l.seg == r.seg {
            return Err(Error::Param(format!("cap at {pos} would close a loop without vertices")));
        }
        self.set_end(l, End::Link { seg: r.seg, head: r.head });
        self.set_end(r, End::Link { seg: l.seg, head: l.head });
        self.strands.drain(pos..pos + 2);
        Ok(())
    }

    fn set_end(&mut self, s: Strand, e: End) {
        if s.head {
            self.segs[s.seg].head = e;
        } else {
            self.segs[s.seg].tail = e;
        }
    }

    /// A vertex taking `k_in` strands from below and emitting `outputs` above,
    /// each output given by the letter its strand reads. Returns the vertex
    /// index and the new segments.
    pub fn vertex(&mut self, pos: usize, k_in: usize, outputs: &[(Label, i8)], kind: VertexKind) -> Result<(usize, Vec<usize>)> {
        self.check_pos(pos, k_in)?;
        let v = self.vertices.len();
        let m = outputs.len();
        self.vertices.push(Pending { kind, slots: m + k_in });
        let below: Vec<Strand> = self.strands.drain(pos..pos + k_in).collect();
        for (i, s) in below.into_iter().enumerate() {
            self.set_end(s, End::At { vertex: v, slot: m + i });
        }
        let mut new = Vec::with_capacity(m);
        let mut above = Vec::with_capacity(m);
        for (j, (label, sign)) in outputs.iter().enumerate() {
            let seg = self.segs.len();
            let at = End::At { vertex: v, slot: m - 1 - j };
            let up = *sign > 0;
            let (tail, head) = if up { (at, End::Open) } else { (End::Open, at) };
            self.segs.push(Seg { label: label.clone(), tail, head });
            new.push(seg);
            above.push(Strand { seg, head: up });
        }
        self.strands.splice(pos..pos, above);
        if pos == 0 && self.outer.is_none() {
            let slot = if m > 0 { m - 1 } else { k_in - 1 };
            self.outer = Some((v, slot));
        }
        Ok((v, new))
    }

    pub fn finish(self) -> Result<Built> {
        if !self.strands.is_empty() {
            return Err(Error::Param(format!("{} strands are still open", self.strands.len())));
        }
        let n = self.segs.len();
        let mut seg_edge = vec![usize::MAX; n];
        let mut edges = Vec::new();
        let mut rotations: Vec<Vec<usize>> = self.vertices.iter().map(|p| vec![usize::MAX; p.slots]).collect();
        for s in 0..n {
            if seg_edge[s] != usize::MAX {
                continue;
            }
            let k = edges.len();
            let tail = self.walk(s, false, &mut seg_edge, k)?;
            let head = self.walk(s, true, &mut seg_edge, k)?;
            for ((v, slot), d) in [(tail, 2 * k), (head, 2 * k + 1)] {
                rotations[v][slot] = d;
            }
            edges.push(Edge { id: k, label: self.segs[s].label.clone() });
        }
        if rotations.iter().flatten().any(|&d| d == usize::MAX) {
            return Err(Error::Param("a vertex slot was left empty".into()));
        }
        let vertices = self
            .vertices
            .into_iter()
            .zip(rotations)
            .enumerate()
            .map(|(id, (p, rotation))| Vertex { id, kind: p.kind, rotation, marked_at: None })
            .collect::<Vec<_>>();
        let basepoint = self.outer.map(|(v, slot)| Basepoint::Corner(vertices[v].rotation[slot]));
        let mut chart = Chart { g: self.g, base_genus: 0, free_handles: 0, flavor: self.flavor, edges, vertices, basepoint };
        if chart.edges.is_empty() {
            chart.basepoint = Some(Basepoint::Bare);
        }
        chart.canonicalize_basepoint()?;
        Ok(Built { chart, seg_edge })
    }

    /// Follows links from segment `s` toward its head (or tail) until a vertex.
    fn walk(&self, s: usize, to_head: bool, seg_edge: &mut [usize], k: usize) -> Result<(usize, usize)> {
        let mut cur = s;
        for _ in 0..=self.segs.len() {
            seg_edge[cur] = k;
            let end = if to_head { self.segs[cur].head } else { self.segs[cur].tail };
            match end {
                End::At { vertex, slot } => return Ok((vertex, slot)),
                End::Open => return Err(Error::Param("open strand at finish".into())),
                End::Link { seg, .. } => cur = seg,
            }
        }
        Err(Error::Param("a closed loop has no vertex".into()))
    }
}
