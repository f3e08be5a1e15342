//! Transitions: a black vertex is surrounded by a white vertex and arcs
//! reading a conjugator, and re-typed as the conjugated letter.
//!
//! The new white vertex `T` lists, counterclockwise, the old darts `S`, the
//! outer ends of the arcs reading `Y`, the edges to the re-typed vertex
//! reading `S'⁻¹`, then the inner ends of the arcs reading `Y⁻¹`. Its
//! clockwise meridian is `Y S' Y⁻¹ S⁻¹`, so the move exists exactly when that
//! word is a relator, and then `S' = Y⁻¹ S Y`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::edit::{bp_dart, finish, push_edge, push_vertex, reject, remove, require_valid, surviving_corner};
use crate::chart::json::kind_from_strings;
use crate::chart::{alpha, black_letter, black_word, edge_of, is_head, luo_matches, BlackType, Chart, ChartWord, Dart, Flavor, Label, VertexKind};
use crate::error::Result;
use crate::formats::parse_word_line;
use crate::symplectic::{conjugate_letter, eval_word, ClassTable};
use crate::words::{expand_relator, GenLetter, GenWord, Letter, RelatorId, Word};

/// Outcome of a transition beyond the new chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionNote {
    pub relator: RelatorId,
    pub sign: i8,
    /// Whether `s'` and `w⁻¹ s w` agree in Sp(2g, ℤ).
    pub sp_check: bool,
    /// The Sp comparison alone cannot certify equality in the mapping class group.
    pub necessary_only: bool,
}

/// `eval(s') == eval(w⁻¹ s w)`; a necessary condition for `s'` and the conjugate
/// to be the same mapping class.
pub fn transition_check(s: &ChartWord, s_target: &ChartWord, w: &ChartWord) -> bool {
    let (s, t, w) = (s.to_twists(), s_target.to_twists(), w.to_twists());
    if s.g() != t.g() || s.g() != w.g() {
        return false;
    }
    eval_word(&t) == eval_word(&w.inverse().concat(&s).concat(&w))
}

/// A transition available from the Wajnryb relator list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionRule {
    pub relator: RelatorId,
    pub sign: i8,
    pub source: GenLetter,
    pub target: GenLetter,
    #[serde(serialize_with = "as_text")]
    pub conjugator: GenWord,
}

fn as_text<S: serde::Serializer>(w: &GenWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(w)
}

/// Every way a rotation of a commutation, braid or hyperelliptic relator (or
/// its inverse) reads `Y s' Y⁻¹ s⁻¹` with single letters `s`, `s'`.
pub fn builtin_transitions(g: usize) -> Result<Vec<TransitionRule>> {
    let mut out = Vec::new();
    for r in RelatorId::all(g).into_iter().filter(|r| matches!(r, RelatorId::F(..) | RelatorId::B(_) | RelatorId::H)) {
        let word = expand_relator(r, g)?;
        for sign in [1i8, -1] {
            let x = if sign > 0 { word.clone() } else { word.inverse() };
            let n = x.len();
            if n < 2 || n % 2 == 1 {
                continue;
            }
            let m = (n - 2) / 2;
            for k in 0..n {
                let y = x.rotate(k);
                let l = y.letters();
                let conj = &l[..m];
                let back: Vec<GenLetter> = conj.iter().rev().map(Letter::inverse).collect();
                if l[m + 1..2 * m + 1] != back[..] {
                    continue;
                }
                let rule = TransitionRule {
                    relator: r,
                    sign,
                    source: l[n - 1].inverse(),
                    target: l[m].clone(),
                    conjugator: Word::new(g, conj.to_vec())?,
                };
                if !out.contains(&rule) {
                    out.push(rule);
                }
            }
        }
    }
    Ok(out)
}

fn items_of(w: &ChartWord) -> Vec<(Label, i8)> {
    match w {
        ChartWord::Gen(w) => w.letters().iter().map(|l| (Label::Gen(l.index), l.exp)).collect(),
        ChartWord::Twist(w) => w.letters().iter().map(|t| (Label::curve(t.clone()), t.sign)).collect(),
    }
}

fn inverse_items(items: &[(Label, i8)]) -> Vec<(Label, i8)> {
    items.iter().rev().map(|(l, e)| (l.clone(), -e)).collect()
}

/// Black vertex type whose counterclockwise meridian is `items`.
fn classify_black(c: &Chart, items: &[(Label, i8)]) -> Option<(BlackType, i8)> {
    let word = c.word_from(items).ok()?;
    match word {
        ChartWord::Gen(w) if w.len() == 1 => {
            let l = &w.letters()[0];
            Some((BlackType::Ell0(l.index), l.exp))
        }
        ChartWord::Gen(w) => (1..=c.g / 2)
            .flat_map(|h| [(h, 1i8), (h, -1)])
            .find(|&(h, s)| {
                black_word(c, &BlackType::Ell(h), s).ok().flatten().is_some_and(|b| w.is_cyclic_permutation_of(&b))
            })
            .map(|(h, s)| (BlackType::Ell(h), s)),
        ChartWord::Twist(w) if w.len() == 1 && w.letters()[0].sep_genus != Some(0) => {
            Some((BlackType::Twist, w.letters()[0].sign))
        }
        ChartWord::Twist(_) => None,
    }
}

/// White type whose clockwise meridian is `cw`.
fn classify_white(c: &Chart, cw: &ChartWord) -> Option<(RelatorId, i8)> {
    match cw {
        ChartWord::Gen(w) => RelatorId::all(c.g).into_iter().find_map(|r| {
            let x = expand_relator(r, c.g).ok()?;
            if x.len() != w.len() {
                return None;
            }
            if w.is_cyclic_permutation_of(&x) {
                Some((r, 1))
            } else if w.is_cyclic_permutation_of(&x.inverse()) {
                Some((r, -1))
            } else {
                None
            }
        }),
        ChartWord::Twist(w) => [RelatorId::T, RelatorId::P, RelatorId::C2Chain, RelatorId::Lantern]
            .into_iter()
            .flat_map(|r| [(r, 1i8), (r, -1)])
            .find(|&(r, s)| luo_matches(&if s > 0 { w.clone() } else { w.inverse() }, r)),
    }
}

fn conjugator_word(c: &Chart, text: &str) -> Result<ChartWord> {
    let w = parse_word_line(text, c.g)?;
    Ok(match (c.flavor, w) {
        (Flavor::Wajnryb, ChartWord::Gen(w)) => ChartWord::Gen(w),
        (Flavor::Wajnryb, ChartWord::Twist(_)) => {
            return Err(reject("a Wajnryb transition needs a conjugator in the generators"));
        }
        (Flavor::Luo, w) => ChartWord::Twist(w.to_twists()),
    })
}

/// The re-typed vertex's kind and counterclockwise reading.
fn target_of(c: &Chart, v: usize, y: &ChartWord, target: Option<&str>) -> Result<(VertexKind, Vec<(Label, i8)>)> {
    let VertexKind::Black { ty, sign } = &c.vertices[v].kind else { unreachable!("caller checked") };
    let id = c.vertices[v].id;
    let letter = black_letter(c, v).ok_or_else(|| reject(format!("vertex {id} has no monodromy letter")))?;
    let image = conjugate_letter(&letter, &y.to_twists());
    let explicit = target.map(|t| kind_from_strings("black", Some(t))).transpose()?;
    if let Some(VertexKind::Black { ty: t2, sign: s2 }) = explicit {
        return match (black_word(c, &t2, s2)?, ty) {
            (Some(word), _) => Ok((VertexKind::Black { ty: t2, sign: s2 }, items_of(&ChartWord::Gen(word)))),
            (None, BlackType::Twist) => {
                Ok((VertexKind::Black { ty: t2, sign: s2 }, vec![(Label::curve(image), s2)]))
            }
            (None, _) => Err(reject(format!("target type does not fit vertex {id}"))),
        };
    }
    match ty {
        BlackType::Twist => {
            let kind = VertexKind::Black { ty: BlackType::Twist, sign: *sign };
            Ok((kind, vec![(Label::curve(image), *sign)]))
        }
        BlackType::Ell0(_) => {
            let table = ClassTable::standard(c.g);
            let neg: Vec<_> = image.hclass.iter().map(|x| -x).collect();
            let j = (0..=2 * c.g)
                .find(|&j| table.class(j) == &image.hclass[..] || table.class(j) == &neg[..])
                .ok_or_else(|| reject(format!("no generator carries the conjugated curve of vertex {id}; give a target")))?;
            Ok((VertexKind::Black { ty: BlackType::Ell0(j), sign: *sign }, vec![(Label::Gen(j), *sign)]))
        }
        BlackType::Ell(_) => {
            let word = black_word(c, ty, *sign)?.expect("separating type has a word");
            Ok((VertexKind::Black { ty: ty.clone(), sign: *sign }, items_of(&ChartWord::Gen(word))))
        }
    }
}

pub(super) fn transition(c: &Chart, vertex: usize, conjugator: &str, target: Option<&str>) -> Result<(Chart, TransitionNote)> {
    require_valid(c)?;
    let v = c.vertex_index(vertex).map_err(|e| reject(e.to_string()))?;
    if !c.vertices[v].kind.is_black() {
        return Err(reject(format!("vertex {vertex} is not black")));
    }
    let y = conjugator_word(c, conjugator)?;
    let (kind, s2_items) = target_of(c, v, &y, target)?;
    let s_items = c.meridian_items(v);
    let s_word = c.word_from(&s_items)?;
    let s2_word = c.word_from(&s2_items)?;
    let sp_check = transition_check(&s_word, &s2_word, &y);

    let mut out = c.clone();
    let mut a_darts = Vec::new();
    let mut b_darts = Vec::new();
    for (label, e) in items_of(&y) {
        let k = push_edge(&mut out, label);
        let (a, b) = if e > 0 { (2 * k + 1, 2 * k) } else { (2 * k, 2 * k + 1) };
        a_darts.push(a);
        b_darts.push(b);
    }
    let f_darts: Vec<Dart> = s2_items
        .iter()
        .map(|(label, e)| {
            let k = push_edge(&mut out, label.clone());
            if *e > 0 {
                2 * k + 1
            } else {
                2 * k
            }
        })
        .collect();
    let mut rotation = c.vertices[v].rotation.clone();
    rotation.extend(&a_darts);
    rotation.extend(f_darts.iter().rev().map(|&d| alpha(d)));
    rotation.extend(b_darts.iter().rev());
    let marked = c.vertices[v].marked_at;
    let probe = push_vertex(&mut out, VertexKind::Transparent, rotation, marked);
    out.vertices[v].kind = kind;
    out.vertices[v].rotation = f_darts;
    out.vertices[v].marked_at = None;
    let cw = out.word_from(&inverse_items(&out.meridian_items(probe)))?;
    let (relator, sign) = classify_white(&out, &cw)
        .ok_or_else(|| reject(format!("the new white vertex would read {cw}, which is not a relator")))?;
    out.vertices[probe].kind = VertexKind::White { relator, sign };
    let chart = finish(out)?;
    Ok((chart, TransitionNote { relator, sign, sp_check, necessary_only: true }))
}

pub(super) fn transition_collapse(c: &Chart, white: usize) -> Result<Chart> {
    require_valid(c)?;
    let ti = c.vertex_index(white).map_err(|e| reject(e.to_string()))?;
    if !c.vertices[ti].kind.is_white() {
        return Err(reject(format!("vertex {white} is not white")));
    }
    let t = c.topology()?;
    let rot = &c.vertices[ti].rotation;
    let n = rot.len();
    let at = |p: isize| rot[p.rem_euclid(n as isize) as usize];
    for (bi, b) in c.vertices.iter().enumerate() {
        if !b.kind.is_black() || b.rotation.iter().any(|&d| t.vertex_of[alpha(d)] != ti || c.label_of(d).is_ghost()) {
            continue;
        }
        let q = b.rotation.len();
        if q >= n {
            continue;
        }
        // The darts of `b` must come back as one block α(f_q) .. α(f_1).
        let held: BTreeSet<usize> = b.rotation.iter().map(|&d| t.pos_of[alpha(d)]).collect();
        let Some(&p0) = held.iter().find(|&&p| !held.contains(&((p + n - 1) % n))) else { continue };
        let start = p0 as isize;
        let f: Vec<Dart> = (0..q as isize).rev().map(|j| alpha(at(start + j))).collect();
        if !is_cyclic_shift(&b.rotation, &f) {
            continue;
        }
        let end = start + q as isize - 1;
        let mut m_max = 0;
        while 2 * (m_max + 1) + q < n {
            let (x, y) = (at(start - 1 - m_max as isize), at(end + 1 + m_max as isize));
            if x != alpha(y) || c.label_of(x).is_ghost() {
                break;
            }
            m_max += 1;
        }
        for m in (0..=m_max).rev() {
            if let Some(out) = collapse_at(c, &t, ti, bi, start, q, m)? {
                return Ok(out);
            }
        }
    }
    Err(reject(format!("white vertex {white} does not surround a black vertex through arcs")))
}

fn is_cyclic_shift(a: &[Dart], b: &[Dart]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|k| a[k..].iter().chain(&a[..k]).eq(b.iter()))
}

fn collapse_at(c: &Chart, t: &crate::chart::Topology, ti: usize, bi: usize, start: isize, q: usize, m: usize) -> Result<Option<Chart>> {
    let rot = &c.vertices[ti].rotation;
    let n = rot.len() as isize;
    let idx = |p: isize| p.rem_euclid(n) as usize;
    let end = start + q as isize - 1;
    let s_positions: Vec<usize> = (end + m as isize + 1..start - m as isize + n).map(idx).collect();
    let s_darts: Vec<Dart> = s_positions.iter().map(|&p| rot[p]).collect();
    let items: Vec<(Label, i8)> = s_darts
        .iter()
        .filter(|&&d| !c.label_of(d).is_ghost())
        .map(|&d| (c.label_of(d).clone(), if is_head(d) { 1 } else { -1 }))
        .collect();
    let Some((ty, sign)) = classify_black(c, &items) else { return Ok(None) };

    let mut edges: BTreeSet<usize> = c.vertices[bi].rotation.iter().map(|&d| edge_of(d)).collect();
    for j in 1..=m as isize {
        edges.insert(edge_of(rot[idx(start - j)]));
    }
    let inside: BTreeSet<Dart> = edges.iter().flat_map(|&k| [2 * k, 2 * k + 1]).collect();
    let inner_corners = (start - m as isize..end + m as isize).map(|p| rot[idx(p)]).chain(c.vertices[bi].rotation.iter().copied());
    let bp = bp_dart(c);
    for d in inner_corners {
        let face = &t.faces[t.face_of[d]];
        if face.iter().any(|x| !inside.contains(x)) {
            return Ok(None);
        }
        // Seen from the basepoint's side this is the outside.
        if bp.is_some_and(|b| t.face_of[b] == t.face_of[d]) {
            return Ok(None);
        }
    }
    let marked = c.vertices[ti].marked_at.and_then(|p| s_positions.iter().position(|&x| x == p));
    let gone = |d: Dart| edges.contains(&edge_of(d));
    let new_bp = bp.and_then(|d| surviving_corner(c, t, d, &gone));
    let mut out = c.clone();
    let b = &mut out.vertices[bi];
    b.kind = VertexKind::Black { ty, sign };
    b.rotation = s_darts;
    b.marked_at = marked;
    finish(remove(out, &edges, &BTreeSet::from([ti]), new_bp)).map(Some)
}
