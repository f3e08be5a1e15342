//! Chart files: JSON with user dart ids, rewritten to canonical darts on output.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{BlackType, Chart, Edge, Flavor, Label, Vertex, VertexKind};
use crate::error::{Error, Result};
use crate::words::{RelatorId, TwistLetter};

#[derive(Serialize, Deserialize)]
struct ChartFile {
    g: usize,
    base_genus: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    free_handles: usize,
    flavor: Flavor,
    edges: Vec<EdgeRec>,
    vertices: Vec<VertexRec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basepoint_face: Option<usize>,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

#[derive(Serialize, Deserialize)]
struct EdgeRec {
    id: usize,
    label: Option<LabelRec>,
    head_dart: usize,
    tail_dart: usize,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum LabelRec {
    Gen(usize),
    Curve {
        hclass: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sep_genus: Option<usize>,
    },
}

#[derive(Serialize, Deserialize)]
struct VertexRec {
    id: usize,
    kind: String,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    ty: Option<String>,
    rotation: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    marked_at: Option<usize>,
}

fn label_from_rec(r: Option<LabelRec>) -> Label {
    match r {
        None => Label::Ghost,
        Some(LabelRec::Gen(i)) => Label::Gen(i),
        Some(LabelRec::Curve { hclass, sep_genus }) => Label::curve(TwistLetter {
            sign: 1,
            hclass: hclass.into_iter().map(BigInt::from).collect(),
            sep_genus,
        }),
    }
}

fn label_to_rec(l: &Label) -> Result<Option<LabelRec>> {
    Ok(match l {
        Label::Ghost => None,
        Label::Gen(i) => Some(LabelRec::Gen(*i)),
        Label::Curve(t) => Some(LabelRec::Curve {
            hclass: t
                .hclass
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::Unsupported("class entry exceeds 64 bits".into())))
                .collect::<Result<_>>()?,
            sep_genus: t.sep_genus,
        }),
    })
}

/// Serde adapter for labels written as in chart files.
pub(crate) mod label_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{label_from_rec, label_to_rec, LabelRec};
    use crate::chart::Label;

    pub fn serialize<S: Serializer>(l: &Label, s: S) -> Result<S::Ok, S::Error> {
        label_to_rec(l).map_err(serde::ser::Error::custom)?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Label, D::Error> {
        Ok(label_from_rec(Option::<LabelRec>::deserialize(d)?))
    }
}

fn split_sign(s: &str) -> (&str, i8) {
    match s.trim().strip_suffix("^-1") {
        Some(base) => (base.trim(), -1),
        None => (s.trim().strip_suffix("^+1").unwrap_or(s.trim()), 1),
    }
}

fn with_sign(base: String, sign: i8) -> String {
    if sign > 0 {
        base
    } else {
        format!("{base}^-1")
    }
}

pub fn kind_from_strings(kind: &str, ty: Option<&str>) -> Result<VertexKind> {
    let need = |what: &str| Error::Chart(format!("{what} vertex needs a type"));
    match kind {
        "transparent" => Ok(VertexKind::Transparent),
        "white" => {
            let (base, sign) = split_sign(ty.ok_or_else(|| need("white"))?);
            Ok(VertexKind::White { relator: base.parse::<RelatorId>()?, sign })
        }
        "black" => {
            let (base, sign) = split_sign(ty.ok_or_else(|| need("black"))?);
            let bad = || Error::Chart(format!("unknown black type '{base}'"));
            let ty = if base == "twist" {
                BlackType::Twist
            } else {
                let (name, rest) = base.split_once('(').ok_or_else(bad)?;
                let k: usize = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
                match name {
                    "ell0" => BlackType::Ell0(k),
                    "ell" => BlackType::Ell(k),
                    _ => return Err(bad()),
                }
            };
            Ok(VertexKind::Black { ty, sign })
        }
        other => Err(Error::Chart(format!("unknown vertex kind '{other}'"))),
    }
}

pub fn kind_to_strings(kind: &VertexKind) -> (&'static str, Option<String>) {
    match kind {
        VertexKind::Transparent => ("transparent", None),
        VertexKind::White { relator, sign } => ("white", Some(with_sign(relator.to_string(), *sign))),
        VertexKind::Black { ty, sign } => {
            let base = match ty {
                BlackType::Ell0(i) => format!("ell0({i})"),
                BlackType::Ell(h) => format!("ell({h})"),
                BlackType::Twist => "twist".to_string(),
            };
            ("black", Some(with_sign(base, *sign)))
        }
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.to_string())
}

pub fn from_json(text: &str) -> Result<Chart> {
    let file: ChartFile = serde_json::from_str(text).map_err(json_err)?;
    let mut dart_map = HashMap::new();
    let mut edges = Vec::with_capacity(file.edges.len());
    for (k, e) in file.edges.iter().enumerate() {
        for (user, canon) in [(e.tail_dart, 2 * k), (e.head_dart, 2 * k + 1)] {
            if dart_map.insert(user, canon).is_some() {
                return Err(Error::Chart(format!("dart id {user} is used twice")));
            }
        }
        edges.push(Edge { id: e.id, label: label_from_rec(e.label.clone()) });
    }
    let mut vertices = Vec::with_capacity(file.vertices.len());
    for v in &file.vertices {
        let rotation = v
            .rotation
            .iter()
            .map(|d| {
                dart_map.get(d).copied().ok_or_else(|| Error::Chart(format!("vertex {} lists unknown dart {d}", v.id)))
            })
            .collect::<Result<Vec<_>>>()?;
        let kind = kind_from_strings(&v.kind, v.ty.as_deref())
            .map_err(|e| Error::Chart(format!("vertex {}: {e}", v.id)))?;
        vertices.push(Vertex { id: v.id, kind, rotation, marked_at: v.marked_at });
    }
    let mut chart = Chart {
        g: file.g,
        base_genus: file.base_genus,
        free_handles: file.free_handles,
        flavor: file.flavor,
        edges,
        vertices,
        basepoint: None,
    };
    if let Some(f) = file.basepoint_face {
        chart.set_basepoint_face(f)?;
    }
    Ok(chart)
}

pub fn to_json(c: &Chart) -> Result<String> {
    let mut edges = Vec::with_capacity(c.edges.len());
    for (k, e) in c.edges.iter().enumerate() {
        edges.push(EdgeRec { id: e.id, label: label_to_rec(&e.label)?, head_dart: 2 * k + 1, tail_dart: 2 * k });
    }
    let vertices = c
        .vertices
        .iter()
        .map(|v| {
            let (kind, ty) = kind_to_strings(&v.kind);
            VertexRec { id: v.id, kind: kind.to_string(), ty, rotation: v.rotation.clone(), marked_at: v.marked_at }
        })
        .collect();
    let basepoint_face = match c.basepoint {
        None => None,
        Some(super::Basepoint::Bare) => Some(0),
        Some(super::Basepoint::Corner(_)) => c.basepoint_face()?,
    };
    let file = ChartFile {
        g: c.g,
        base_genus: c.base_genus,
        free_handles: c.free_handles,
        flavor: c.flavor,
        edges,
        vertices,
        basepoint_face,
    };
    serde_json::to_string_pretty(&file).map_err(|e| Error::Unsupported(e.to_string()))
}
