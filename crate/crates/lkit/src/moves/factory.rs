//! Ready-made sphere charts: free edges, the separating-twist star, relator
//! stars, their mirrors, and a four-vertex example with its loop system.

use std::fmt;
use std::str::FromStr;

use crate::chart::builder::Builder;
use crate::chart::{Basepoint, BlackType, Chart, Crossing, Edge, Flavor, Label, Vertex, VertexKind};
use crate::error::{Error, Result};
use crate::words::{expand_derived, expand_relator, Derived, GenLetter, RelatorId, TwistWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactoryName {
    L0(usize),
    Lh(usize),
    LhMirror(usize),
    RC,
    RCMirror,
    RL,
    RLMirror,
}

impl fmt::Display for FactoryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactoryName::L0(i) => write!(f, "L_0({i})"),
            FactoryName::Lh(h) => write!(f, "L_{h}"),
            FactoryName::LhMirror(h) => write!(f, "L_{h}_mirror"),
            FactoryName::RC => write!(f, "R_C"),
            FactoryName::RCMirror => write!(f, "R_C_mirror"),
            FactoryName::RL => write!(f, "R_L"),
            FactoryName::RLMirror => write!(f, "R_L_mirror"),
        }
    }
}

impl FromStr for FactoryName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Param(format!("unknown factory chart '{s}'"));
        let (base, mirror) = match s.strip_suffix("_mirror") {
            Some(b) => (b, true),
            None => (s, false),
        };
        match (base, mirror) {
            ("R_C", false) => return Ok(FactoryName::RC),
            ("R_C", true) => return Ok(FactoryName::RCMirror),
            ("R_L", false) => return Ok(FactoryName::RL),
            ("R_L", true) => return Ok(FactoryName::RLMirror),
            _ => {}
        }
        if let Some(rest) = base.strip_prefix("L_0(") {
            if mirror {
                return Err(bad());
            }
            let i = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            return Ok(FactoryName::L0(i));
        }
        let h: usize = base.strip_prefix("L_").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        Ok(if mirror { FactoryName::LhMirror(h) } else { FactoryName::Lh(h) })
    }
}

pub fn factory(name: FactoryName, g: usize) -> Result<Chart> {
    if g < 3 {
        return Err(Error::Param(format!("factory charts need g >= 3, got {g}")));
    }
    match name {
        FactoryName::L0(i) => free_edge(g, i),
        FactoryName::Lh(h) => separating_star(g, h),
        FactoryName::LhMirror(h) => Ok(separating_star(g, h)?.mirror()),
        FactoryName::RC => relator_star(g, RelatorId::C, 1),
        FactoryName::RCMirror => Ok(relator_star(g, RelatorId::C, 1)?.mirror()),
        FactoryName::RL => relator_star(g, RelatorId::L, 1),
        FactoryName::RLMirror => Ok(relator_star(g, RelatorId::L, 1)?.mirror()),
    }
}

/// One edge from a black ℓ_0(i)⁻¹ vertex to a black ℓ_0(i) vertex.
pub fn free_edge(g: usize, i: usize) -> Result<Chart> {
    if i > 2 * g {
        return Err(Error::Param(format!("generator {i} out of range for g={g}")));
    }
    let black = |id, sign, d| Vertex { id, kind: VertexKind::Black { ty: BlackType::Ell0(i), sign }, rotation: vec![d], marked_at: None };
    Ok(Chart {
        g,
        base_genus: 0,
        free_handles: 0,
        flavor: Flavor::Wajnryb,
        edges: vec![Edge { id: 0, label: Label::Gen(i) }],
        vertices: vec![black(0, -1, 0), black(1, 1, 1)],
        basepoint: Some(Basepoint::Corner(0)),
    })
}

/// A center whose counterclockwise meridian reads `letters`, with one black
/// leaf per letter.
fn star(g: usize, flavor: Flavor, center: VertexKind, letters: &[(Label, i8)], leaf: impl Fn(&Label) -> BlackType) -> Chart {
    let mut edges = Vec::with_capacity(letters.len());
    let mut rotation = Vec::with_capacity(letters.len());
    let mut vertices = vec![Vertex { id: 0, kind: center, rotation: Vec::new(), marked_at: Some(0) }];
    for (j, (label, exp)) in letters.iter().enumerate() {
        edges.push(Edge { id: j, label: label.clone() });
        let (at_center, at_leaf) = if *exp > 0 { (2 * j + 1, 2 * j) } else { (2 * j, 2 * j + 1) };
        rotation.push(at_center);
        vertices.push(Vertex {
            id: j + 1,
            kind: VertexKind::Black { ty: leaf(label), sign: -exp },
            rotation: vec![at_leaf],
            marked_at: None,
        });
    }
    vertices[0].rotation = rotation;
    Chart { g, base_genus: 0, free_handles: 0, flavor, edges, vertices, basepoint: Some(Basepoint::Corner(0)) }
}

fn gen_star(g: usize, center: VertexKind, letters: &[GenLetter]) -> Chart {
    let letters: Vec<(Label, i8)> = letters.iter().map(|l| (Label::Gen(l.index), l.exp)).collect();
    let leaf = |l: &Label| match l {
        Label::Gen(i) => BlackType::Ell0(*i),
        _ => unreachable!("generator stars carry generator labels"),
    };
    star(g, Flavor::Wajnryb, center, &letters, leaf)
}

/// A black ℓ_h vertex surrounded by 4h(2h+1) negative ℓ_0 leaves.
pub fn separating_star(g: usize, h: usize) -> Result<Chart> {
    if h == 0 || 2 * h > g {
        return Err(Error::Param(format!("L_{h} needs 1 <= h <= g/2 (g={g})")));
    }
    let w = expand_derived(Derived::Ell(h), g)?;
    Ok(gen_star(g, VertexKind::Black { ty: BlackType::Ell(h), sign: 1 }, w.letters()))
}

/// A white vertex of type r^sign with one black leaf per letter.
pub fn relator_star(g: usize, r: RelatorId, sign: i8) -> Result<Chart> {
    r.check(g)?;
    let w = expand_relator(r, g)?;
    let ccw = if sign > 0 { w.inverse() } else { w };
    Ok(gen_star(g, VertexKind::White { relator: r, sign }, ccw.letters()))
}

/// A Luo-flavor white vertex of type r^sign, where `relator` is a twist word
/// of shape r, with one black twist leaf per letter.
pub fn luo_star(r: RelatorId, sign: i8, relator: &TwistWord) -> Result<Chart> {
    if !r.is_luo() {
        return Err(Error::Param(format!("{r} is not a Luo relator")));
    }
    let ccw = if sign > 0 { relator.inverse() } else { relator.clone() };
    let letters: Vec<(Label, i8)> = ccw.letters().iter().map(|t| (Label::curve(t.clone()), t.sign)).collect();
    let c = star(relator.g(), Flavor::Luo, VertexKind::White { relator: r, sign }, &letters, |_| BlackType::Twist);
    crate::chart::validate(&c).into_result()?;
    Ok(c)
}

/// A chart together with loops, given as crossing sequences, around its black vertices.
#[derive(Clone, Debug)]
pub struct LoopedChart {
    pub chart: Chart,
    pub loops: Vec<Vec<Crossing>>,
}

/// Four black vertices ζ1, ζ3, ζ2⁻¹, ζ2⁻¹ seen through the conjugators
/// ζ1⁻¹ζ2⁻¹, ζ1⁻¹, ζ2⁻¹ζ3⁻¹ and the empty word, closed up with one r_F and
/// two r_B vertices.
///
/// The loops, in order, read ζ1⁻¹ζ2⁻¹·ζ1·ζ2ζ1, ζ1⁻¹·ζ3·ζ1, ζ2⁻¹ζ3⁻¹·ζ2⁻¹·ζ3ζ2
/// and ζ2⁻¹. The drawing lists the columns right to left so that the loops
/// circle counterclockwise from a basepoint below.
pub fn four_loop_example() -> Result<LoopedChart> {
    let z = Label::Gen;
    let black = |i, sign| VertexKind::Black { ty: BlackType::Ell0(i), sign };
    let white = |relator, sign| VertexKind::White { relator, sign };
    let mut b = Builder::new(3, Flavor::Wajnryb);
    // column of the fourth loop
    let (_, s4) = b.vertex(0, 0, &[(z(2), 1)], black(2, -1))?;
    // third
    let c3a = b.cup(1, z(2), -1)?;
    let c3b = b.cup(2, z(3), -1)?;
    let (_, s3) = b.vertex(3, 0, &[(z(2), 1)], black(2, -1))?;
    // second
    let c2a = b.cup(6, z(1), -1)?;
    let (_, s2) = b.vertex(7, 0, &[(z(3), -1)], black(3, 1))?;
    // first
    let c1a = b.cup(9, z(1), -1)?;
    let c1b = b.cup(10, z(2), -1)?;
    let (_, s1) = b.vertex(11, 0, &[(z(1), -1)], black(1, 1))?;
    b.cap(0)?;
    b.cap(6)?;
    b.vertex(4, 2, &[(z(3), -1), (z(1), -1)], white(RelatorId::F(1, 3), -1))?;
    b.vertex(5, 3, &[(z(2), -1), (z(1), -1), (z(2), -1)], white(RelatorId::B(1), 1))?;
    b.cap(7)?;
    b.cap(6)?;
    b.vertex(2, 3, &[(z(2), -1), (z(3), 1), (z(2), 1)], white(RelatorId::B(2), -1))?;
    b.cap(1)?;
    b.cap(2)?;
    b.cap(0)?;
    let built = b.finish()?;
    let e = |seg: usize| built.seg_edge[seg];
    let around = |cups: &[(usize, i8)], black: usize, sign: i8| {
        let mut v: Vec<Crossing> = cups.iter().map(|&(s, d)| Crossing { edge: e(s), dir: d }).collect();
        v.push(Crossing { edge: e(black), dir: sign });
        v.extend(cups.iter().rev().map(|&(s, d)| Crossing { edge: e(s), dir: -d }));
        v
    };
    let loops = vec![
        around(&[(c1a, -1), (c1b, -1)], s1[0], 1),
        around(&[(c2a, -1)], s2[0], 1),
        around(&[(c3a, -1), (c3b, -1)], s3[0], -1),
        around(&[], s4[0], -1),
    ];
    Ok(LoopedChart { chart: built.chart, loops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{intersection_word, sigma_chart, validate};

    #[test]
    fn names_round_trip() {
        for n in ["L_0(2)", "L_1", "L_2_mirror", "R_C", "R_C_mirror", "R_L", "R_L_mirror"] {
            assert_eq!(n.parse::<FactoryName>().unwrap().to_string(), n);
        }
        assert!("L_0(1)_mirror".parse::<FactoryName>().is_err());
    }

    #[test]
    fn stars_validate() {
        for name in ["L_0(1)", "L_1", "L_1_mirror", "R_C", "R_C_mirror", "R_L", "R_L_mirror"] {
            let c = factory(name.parse().unwrap(), 3).unwrap();
            let r = validate(&c);
            assert!(r.ok, "{name}: {:?}", r.diagnostics);
        }
        assert_eq!(sigma_chart(&factory(FactoryName::RCMirror, 3).unwrap()).unwrap(), 6);
    }

    #[test]
    fn example_words() {
        let ex = four_loop_example().unwrap();
        let r = validate(&ex.chart);
        assert!(r.ok, "{:?}", r.diagnostics);
        assert_eq!(ex.chart.edges.len(), 10);
        let words: Vec<String> = ex.loops.iter().map(|l| intersection_word(&ex.chart, l).unwrap().to_string()).collect();
        assert_eq!(words, ["Z1 Z2 z1 z2 z1", "Z1 z3 z1", "Z2 Z3 Z2 z3 z2", "Z2"]);
    }
}
