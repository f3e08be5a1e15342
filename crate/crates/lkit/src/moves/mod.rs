//! Chart moves as rewrites on chart values, move scripts, fiber sums and
//! ready-made charts.
//!
//! Every move checks its input, applies a local change and validates the
//! result; a move that would produce an invalid chart is rejected.

mod edit;
pub mod factory;
mod fiber_sum;
mod iso;
mod local;
mod transition;

use serde::{Deserialize, Serialize};

use crate::chart::json::{kind_to_strings, label_serde};
use crate::chart::{Chart, Flavor, Label, VertexKind};
use crate::error::{Error, Result};
use crate::words::RelatorId;

pub use fiber_sum::fiber_sum;
pub use iso::isomorphic;
pub use transition::{builtin_transitions, transition_check, TransitionNote, TransitionRule};

fn ccw() -> i8 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// A small hoop tied by a ghost edge to the first corner of `face`;
    /// orientation +1 runs counterclockwise.
    HoopBirth {
        face: usize,
        #[serde(with = "label_serde")]
        label: Label,
        #[serde(default = "ccw")]
        orientation: i8,
    },
    HoopDeath { hoop: usize },
    /// A white vertex of type `relator^sign` and its mirror joined by bigons.
    WhitePairBirth {
        relator: RelatorId,
        #[serde(default = "ccw")]
        sign: i8,
        #[serde(default)]
        face: usize,
    },
    WhitePairDeath { v1: usize, v2: usize },
    /// Reconnects two equally labeled edges across a region they share.
    ChannelChange { edge1: usize, edge2: usize },
    /// Conjugates a black vertex by `conjugator` behind a new white vertex.
    Transition {
        vertex: usize,
        #[serde(default)]
        conjugator: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<String>,
    },
    TransitionCollapse { white: usize },
    /// A hoop around the basepoint: conjugates the whole monodromy.
    #[serde(rename = "conjugacy")]
    ConjugacyBirth {
        #[serde(with = "label_serde")]
        label: Label,
        #[serde(default = "ccw")]
        orientation: i8,
    },
    ConjugacyDeath,
    /// Storage order only: edge `k` moves to slot `edges[k]`.
    Relabel {
        edges: Vec<usize>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        vertices: Vec<usize>,
    },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::HoopBirth { .. } => "hoop_birth",
            Move::HoopDeath { .. } => "hoop_death",
            Move::WhitePairBirth { .. } => "white_pair_birth",
            Move::WhitePairDeath { .. } => "white_pair_death",
            Move::ChannelChange { .. } => "channel_change",
            Move::Transition { .. } => "transition",
            Move::TransitionCollapse { .. } => "transition_collapse",
            Move::ConjugacyBirth { .. } => "conjugacy",
            Move::ConjugacyDeath => "conjugacy_death",
            Move::Relabel { .. } => "relabel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applied {
    pub chart: Chart,
    pub transition: Option<TransitionNote>,
}

pub fn apply_move(c: &Chart, m: &Move) -> Result<Chart> {
    apply_move_report(c, m).map(|a| a.chart)
}

pub fn apply_move_report(c: &Chart, m: &Move) -> Result<Applied> {
    let plain = |r: Result<Chart>| r.map(|chart| Applied { chart, transition: None });
    match m {
        Move::HoopBirth { face, label, orientation } => plain(local::hoop_birth(c, *face, label, *orientation)),
        Move::HoopDeath { hoop } => plain(local::hoop_death(c, *hoop)),
        Move::WhitePairBirth { relator, sign, face } => plain(local::white_pair_birth(c, *relator, *sign, *face)),
        Move::WhitePairDeath { v1, v2 } => plain(local::white_pair_death(c, *v1, *v2)),
        Move::ChannelChange { edge1, edge2 } => plain(local::channel_change(c, *edge1, *edge2)),
        Move::Transition { vertex, conjugator, target } => {
            let (chart, note) = transition::transition(c, *vertex, conjugator, target.as_deref())?;
            Ok(Applied { chart, transition: Some(note) })
        }
        Move::TransitionCollapse { white } => plain(transition::transition_collapse(c, *white)),
        Move::ConjugacyBirth { label, orientation } => plain(local::conjugacy_birth(c, label, *orientation)),
        Move::ConjugacyDeath => plain(local::conjugacy_death(c)),
        Move::Relabel { edges, vertices } => plain(local::relabel(c, edges, vertices)),
    }
}

/// An ordered list of moves, written as a JSON array or as `{"moves": [...]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveScript {
    pub moves: Vec<Move>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScriptFile {
    List(Vec<Move>),
    Object { moves: Vec<Move> },
}

impl MoveScript {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScriptFile = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        Ok(MoveScript {
            moves: match file {
                ScriptFile::List(moves) | ScriptFile::Object { moves } => moves,
            },
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("moves serialize")
    }
}

/// Runs a script, returning each intermediate result. A failing step is
/// reported with its position.
pub fn apply_script(c: &Chart, script: &MoveScript) -> Result<Vec<Applied>> {
    let mut out: Vec<Applied> = Vec::with_capacity(script.moves.len());
    for (i, m) in script.moves.iter().enumerate() {
        let cur = out.last().map_or(c, |a| &a.chart);
        let next = apply_move_report(cur, m).map_err(|e| match e {
            Error::Move(msg) => Error::Move(format!("step {i} ({}): {msg}", m.name())),
            other => other,
        })?;
        out.push(next);
    }
    Ok(out)
}

/// Labels tried by the enumerators: every generator, or each curve in use.
fn sample_labels(c: &Chart) -> Vec<Label> {
    match c.flavor {
        Flavor::Wajnryb => (0..=2 * c.g).map(Label::Gen).collect(),
        Flavor::Luo => {
            let mut out: Vec<Label> = Vec::new();
            for e in &c.edges {
                if !e.label.is_ghost() && !out.iter().any(|l| l.same_curve(&e.label)) {
                    out.push(e.label.clone());
                }
            }
            out
        }
    }
}

/// Moves applicable to `c`, found by trying each family at every site.
/// Births are tried with every generator label and a few short relators.
pub fn candidate_moves(c: &Chart) -> Vec<Move> {
    let faces = c.topology().map(|t| t.faces.len().max(1)).unwrap_or(1);
    let labels = sample_labels(c);
    let mut tries: Vec<Move> = Vec::new();
    for face in 0..faces {
        for label in &labels {
            for orientation in [1, -1] {
                tries.push(Move::HoopBirth { face, label: label.clone(), orientation });
            }
        }
    }
    for label in &labels {
        for orientation in [1, -1] {
            tries.push(Move::ConjugacyBirth { label: label.clone(), orientation });
        }
    }
    tries.push(Move::ConjugacyDeath);
    for e in &c.edges {
        tries.push(Move::HoopDeath { hoop: e.id });
    }
    if c.flavor == Flavor::Wajnryb && c.g >= 3 {
        for face in 0..faces {
            for sign in [1, -1] {
                tries.push(Move::WhitePairBirth { relator: RelatorId::B(1), sign, face });
            }
        }
        for relator in [RelatorId::F(1, 3), RelatorId::F(0, 1), RelatorId::H] {
            tries.push(Move::WhitePairBirth { relator, sign: 1, face: 0 });
        }
    }
    let whites: Vec<&crate::chart::Vertex> = c.vertices.iter().filter(|v| v.kind.is_white()).collect();
    for (i, a) in whites.iter().enumerate() {
        for b in &whites[i + 1..] {
            tries.push(Move::WhitePairDeath { v1: a.id, v2: b.id });
        }
        tries.push(Move::TransitionCollapse { white: a.id });
    }
    for (i, a) in c.edges.iter().enumerate() {
        for b in &c.edges[i + 1..] {
            if !a.label.is_ghost() && a.label == b.label {
                tries.push(Move::ChannelChange { edge1: a.id, edge2: b.id });
            }
        }
    }
    if c.flavor == Flavor::Wajnryb && c.g >= 3 {
        let rules = builtin_transitions(c.g).unwrap_or_default();
        for v in c.black_vertices() {
            let VertexKind::Black { ty: crate::chart::BlackType::Ell0(i), sign } = &v.kind else { continue };
            for r in rules.iter().filter(|r| r.source.index == *i && r.source.exp == *sign) {
                let target = VertexKind::Black { ty: crate::chart::BlackType::Ell0(r.target.index), sign: r.target.exp };
                tries.push(Move::Transition {
                    vertex: v.id,
                    conjugator: r.conjugator.to_string(),
                    target: kind_to_strings(&target).1,
                });
            }
        }
    }
    let n = c.edges.len();
    if n > 1 {
        let nv = c.vertices.len();
        tries.push(Move::Relabel { edges: (0..n).rev().collect(), vertices: (0..nv).rev().collect() });
    }
    tries.into_iter().filter(|m| apply_move(c, m).is_ok()).collect()
}
