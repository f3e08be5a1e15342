use serde::Serialize;

use super::{black_word, is_head, Basepoint, BlackType, Chart, ChartWord, Flavor, Label, Topology, VertexKind};
use crate::symplectic::{conjugate_letter, eval_word, pairing};
use crate::words::{expand_relator, Letter, RelatorId, TwistLetter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub entity: String,
    pub message: String,
}

/// How a white vertex's meridian matched its declared type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WhiteReading {
    Clockwise,
    /// Matched only when read counterclockwise; reported as a failure.
    CounterclockwiseOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
    pub euler: i64,
    pub expected_euler: i64,
    pub white_readings: Vec<(usize, WhiteReading)>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn into_result(self) -> crate::Result<ValidationReport> {
        if self.ok {
            Ok(self)
        } else {
            let msgs: Vec<String> = self.diagnostics.iter().map(|d| format!("{}: {}", d.entity, d.message)).collect();
            Err(crate::Error::Chart(msgs.join("; ")))
        }
    }
}

struct Sink(Vec<Diagnostic>);

impl Sink {
    fn push(&mut self, entity: impl Into<String>, message: impl Into<String>) {
        self.0.push(Diagnostic { entity: entity.into(), message: message.into() });
    }
}

pub fn validate(c: &Chart) -> ValidationReport {
    let mut diag = Sink(Vec::new());
    let expected_euler = 2 - 2 * (c.base_genus as i64 - c.free_handles as i64);
    let mut report = ValidationReport {
        ok: false,
        vertices: c.vertices.len(),
        edges: c.edges.len(),
        faces: 0,
        components: 0,
        euler: 0,
        expected_euler,
        white_readings: Vec::new(),
        diagnostics: Vec::new(),
    };
    if c.free_handles > c.base_genus {
        diag.push("chart", format!("free_handles {} exceeds base_genus {}", c.free_handles, c.base_genus));
    }
    if c.flavor == Flavor::Wajnryb && c.g < 3 {
        diag.push("chart", format!("Wajnryb charts need g >= 3, got {}", c.g));
    }
    check_ids(c, &mut diag);
    for e in &c.edges {
        match (&e.label, c.flavor) {
            (Label::Ghost, _) => {}
            (Label::Gen(i), Flavor::Wajnryb) if *i <= 2 * c.g => {}
            (Label::Gen(i), Flavor::Wajnryb) => diag.push(format!("edge {}", e.id), format!("label z{i} exceeds 2g")),
            (Label::Curve(t), Flavor::Luo) => {
                if let Err(err) = t.check(c.g) {
                    diag.push(format!("edge {}", e.id), err.to_string());
                }
            }
            (l, f) => diag.push(format!("edge {}", e.id), format!("label {l} does not fit the {f:?} flavor")),
        }
    }
    let topo = match Topology::of(c) {
        Ok(t) => t,
        Err(err) => {
            diag.push("rotation system", err.to_string());
            report.diagnostics = diag.0;
            return report;
        }
    };
    for (vi, v) in c.vertices.iter().enumerate() {
        let name = format!("vertex {}", v.id);
        if v.rotation.is_empty() {
            diag.push(&name, "has no incident darts");
            continue;
        }
        if let Some(p) = v.marked_at {
            if p >= v.rotation.len() {
                diag.push(&name, format!("marked position {p} is past the rotation"));
            }
        }
        match &v.kind {
            VertexKind::Transparent => check_transparent(c, vi, &mut diag),
            VertexKind::Black { ty, sign } => check_black(c, vi, ty, *sign, &mut diag),
            VertexKind::White { relator, sign } => {
                if let Some(r) = check_white(c, vi, *relator, *sign, &mut diag) {
                    report.white_readings.push((v.id, r));
                }
            }
        }
    }
    let v = c.vertices.len() as i64;
    let e = c.edges.len() as i64;
    report.components = topo.components;
    report.faces = topo.surface_faces();
    report.euler = if c.edges.is_empty() && c.vertices.is_empty() {
        expected_euler
    } else {
        v - e + topo.faces.len() as i64 - 2 * (topo.components as i64 - 1)
    };
    if report.euler != expected_euler {
        diag.push(
            "chart",
            format!(
                "Euler characteristic {} does not match {} for base genus {} with {} free handles",
                report.euler, expected_euler, c.base_genus, c.free_handles
            ),
        );
    }
    match c.basepoint {
        Some(Basepoint::Corner(d)) if d >= c.dart_count() => diag.push("basepoint", format!("dart {d} does not exist")),
        Some(Basepoint::Bare) if !c.edges.is_empty() => diag.push("basepoint", "chart has darts but no basepoint corner"),
        _ => {}
    }
    report.diagnostics = diag.0;
    report.ok = report.diagnostics.is_empty();
    report
}

fn check_ids(c: &Chart, diag: &mut Sink) {
    let mut ids: Vec<usize> = c.edges.iter().map(|e| e.id).collect();
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        diag.push(format!("edge {}", w[0]), "duplicate edge id");
    }
    let mut ids: Vec<usize> = c.vertices.iter().map(|v| v.id).collect();
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        diag.push(format!("vertex {}", w[0]), "duplicate vertex id");
    }
}

fn check_transparent(c: &Chart, v: usize, diag: &mut Sink) {
    let vert = &c.vertices[v];
    let solid: Vec<usize> = vert.rotation.iter().copied().filter(|&d| !c.label_of(d).is_ghost()).collect();
    let name = format!("vertex {}", vert.id);
    if solid.len() != 2 {
        diag.push(name, format!("transparent vertex has {} labeled darts, expected 2", solid.len()));
        return;
    }
    if is_head(solid[0]) == is_head(solid[1]) {
        diag.push(name, "transparent vertex needs one incoming and one outgoing dart");
    } else if c.label_of(solid[0]) != c.label_of(solid[1]) {
        diag.push(name, "transparent vertex joins edges with different labels");
    }
}

fn check_black(c: &Chart, v: usize, ty: &BlackType, sign: i8, diag: &mut Sink) {
    let vert = &c.vertices[v];
    let name = format!("vertex {}", vert.id);
    if sign != 1 && sign != -1 {
        diag.push(name, format!("sign {sign} is not ±1"));
        return;
    }
    match (ty, c.flavor) {
        (BlackType::Twist, Flavor::Wajnryb) | (BlackType::Ell0(_) | BlackType::Ell(_), Flavor::Luo) => {
            diag.push(name, format!("black type {ty:?} does not fit the {:?} flavor", c.flavor));
            return;
        }
        (BlackType::Ell(h), _) if *h == 0 || 2 * h > c.g => {
            diag.push(name, format!("ell({h}) needs 1 <= h <= g/2"));
            return;
        }
        (BlackType::Ell0(i), _) if *i > 2 * c.g => {
            diag.push(name, format!("ell0({i}) out of range"));
            return;
        }
        _ => {}
    }
    let items = c.meridian_items(v);
    let Ok(word) = c.word_from(&items) else {
        diag.push(name, "meridian has labels of the wrong flavor");
        return;
    };
    match black_word(c, ty, sign) {
        Ok(Some(expected)) => {
            if !word.is_cyclic_permutation_of(&ChartWord::Gen(expected.clone())) {
                diag.push(name, format!("meridian {word} is not a cyclic permutation of {expected}"));
            }
        }
        Ok(None) => {
            let ok = match &word {
                ChartWord::Twist(w) if w.len() == 1 => {
                    let t = &w.letters()[0];
                    t.sign == sign && t.sep_genus != Some(0)
                }
                _ => false,
            };
            if !ok {
                diag.push(name, format!("meridian {word} is not a single twist of sign {sign} along a nontrivial curve"));
            }
        }
        Err(err) => diag.push(name, err.to_string()),
    }
}

fn check_white(c: &Chart, v: usize, relator: RelatorId, sign: i8, diag: &mut Sink) -> Option<WhiteReading> {
    let vert = &c.vertices[v];
    let name = format!("vertex {}", vert.id);
    if sign != 1 && sign != -1 {
        diag.push(name, format!("sign {sign} is not ±1"));
        return None;
    }
    if relator.is_luo() != (c.flavor == Flavor::Luo) {
        diag.push(name, format!("white type {relator} does not fit the {:?} flavor", c.flavor));
        return None;
    }
    let items = c.meridian_items(v);
    let Ok(ccw) = c.word_from(&items) else {
        diag.push(name, "meridian has labels of the wrong flavor");
        return None;
    };
    let cw = ccw.inverse();
    let matches = |w: &ChartWord| -> Result<bool, String> {
        match w {
            ChartWord::Gen(w) => {
                relator.check(c.g).map_err(|e| e.to_string())?;
                let r = expand_relator(relator, c.g).map_err(|e| e.to_string())?;
                let r = if sign > 0 { r } else { r.inverse() };
                Ok(w.is_cyclic_permutation_of(&r))
            }
            ChartWord::Twist(w) => {
                let w = if sign > 0 { w.clone() } else { w.inverse() };
                Ok(luo_matches(&w, relator))
            }
        }
    };
    match (matches(&cw), matches(&ccw)) {
        (Err(e), _) => {
            diag.push(name, e);
            None
        }
        (Ok(true), _) => Some(WhiteReading::Clockwise),
        (Ok(false), Ok(true)) => {
            diag.push(
                name,
                format!("meridian matches {relator} only when read counterclockwise; white vertices read clockwise"),
            );
            Some(WhiteReading::CounterclockwiseOnly)
        }
        _ => {
            let sup = if sign > 0 { "" } else { "^-1" };
            diag.push(name, format!("clockwise meridian {cw} is not a cyclic permutation of {relator}{sup}"));
            None
        }
    }
}

/// Whether some rotation of `w` has the shape of the Luo relator `id`.
pub(crate) fn luo_matches(w: &Word<TwistLetter>, id: RelatorId) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    if !eval_word(w).is_identity() {
        return false;
    }
    (0..n).any(|k| luo_shape(w.rotate(k).letters(), id))
}

fn same(a: &TwistLetter, b: &TwistLetter) -> bool {
    Label::curve(a.clone()).same_curve(&Label::curve(b.clone()))
}

fn luo_shape(x: &[TwistLetter], id: RelatorId) -> bool {
    let signs: Vec<i8> = x.iter().map(|t| t.sign).collect();
    match id {
        RelatorId::T => x.len() == 1 && x[0].sep_genus == Some(0) && x[0].sign == 1,
        RelatorId::P => {
            if x.len() != 4 || signs != [-1, 1, 1, -1] || !same(&x[0], &x[2]) {
                return false;
            }
            let (a, b, c) = (&x[1], &x[2], &x[3]);
            if a.is_separating() || c.is_separating() {
                return a.sep_genus == c.sep_genus;
            }
            let image = conjugate_letter(a, &Word::new_unchecked(a.hclass.len() / 2, vec![b.clone()]));
            same(&image, c)
        }
        RelatorId::C2Chain => {
            if x.len() != 13 || x[12].sign != -1 || x[12].sep_genus != Some(1) {
                return false;
            }
            let (c2, c1) = (&x[0], &x[1]);
            if c1.is_separating() || c2.is_separating() {
                return false;
            }
            let one = pairing(&c1.hclass, &c2.hclass).map(|p| p == 1.into() || p == (-1).into()).unwrap_or(false);
            one && (0..12).all(|k| x[k].sign == 1 && same(&x[k], if k % 2 == 0 { c2 } else { c1 }))
        }
        RelatorId::Lantern => {
            if x.len() != 7 || signs != [1, 1, 1, -1, -1, -1, -1] {
                return false;
            }
            let (b, a) = (&x[1], &x[2]);
            pairing(&a.hclass, &b.hclass).map(|p| p == 0.into()).unwrap_or(false) && !same(a, b)
        }
        _ => false,
    }
}
