use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{alpha, black_letter, is_head, validate, Basepoint, Chart, Dart, Topology};
use crate::error::{Error, Result};
use crate::signature::Factorization;
use crate::symplectic::{letter_matrix, SpMatrix};
use crate::words::{TwistLetter, Word};

pub fn derive_hurwitz(c: &Chart) -> Result<Factorization> {
    derive_hurwitz_seeded(c, None)
}

/// Reads the black vertices along an Euler tour of a dual spanning tree.
///
/// With a seed, the tree is grown with shuffled neighbour order; the result
/// differs from the unseeded one only by Hurwitz moves.
pub fn derive_hurwitz_seeded(c: &Chart, seed: Option<u64>) -> Result<Factorization> {
    if c.base_genus != 0 {
        return Err(Error::Unsupported("Hurwitz systems are only read off charts in the sphere".into()));
    }
    validate(c).into_result()?;
    let bp = match c.basepoint {
        None => return Err(Error::Chart("chart has no basepoint".into())),
        Some(Basepoint::Bare) => return Factorization::new(Word::empty(c.g), 0),
        Some(Basepoint::Corner(d)) => d,
    };
    let t = c.topology()?;
    let root = t.face_of[bp];
    let root_comp = t.component_of_dart(bp);
    let outer = t.outer_faces();
    let merged = |f: usize| -> usize {
        match outer.iter().position(|&o| o == f) {
            Some(k) if k != root_comp => root,
            _ => f,
        }
    };
    let mut extra_roots: Vec<Dart> =
        (0..t.components).filter(|&k| k != root_comp).map(|k| t.faces[outer[k]][0]).collect();
    extra_roots.sort_unstable();

    let nf = t.faces.len();
    let mut designated: Vec<Option<Dart>> = vec![None; nf];
    let mut seen = vec![false; nf];
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    seen[root] = true;
    for &d in &extra_roots {
        seen[t.face_of[d]] = true;
    }
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        let mut darts: Vec<Dart> = t.faces[f].clone();
        if f == root {
            for &d in &extra_roots {
                darts.extend(t.faces[t.face_of[d]].iter().copied());
            }
        }
        if let Some(r) = rng.as_mut() {
            darts.shuffle(r);
        }
        for y in darts {
            let x = alpha(y);
            let child = merged(t.face_of[x]);
            if !seen[child] {
                seen[child] = true;
                designated[child] = Some(x);
                queue.push_back(child);
            }
        }
    }

    let mut tour = Tour {
        c,
        t: &t,
        designated: &designated,
        emitted: vec![false; c.vertices.len()],
        path: vec![SpMatrix::identity(c.g)],
        table: c.class_table(),
        out: Vec::new(),
    };
    tour.face(bp);
    for &d in &extra_roots {
        tour.face(d);
    }
    let missing = c.vertices.iter().enumerate().filter(|(i, v)| v.kind.is_black() && !tour.emitted[*i]).count();
    if missing > 0 {
        return Err(Error::Chart(format!("{missing} black vertices were not reached from the basepoint")));
    }
    // The tour meets the black vertices clockwise around the basepoint; the
    // loops read counterclockwise compose in the opposite order.
    tour.out.reverse();
    let word = Word::new(c.g, tour.out)?;
    Factorization::new(word, 0)
        .map_err(|_| Error::Chart("the derived Hurwitz system does not multiply to the identity".into()))
}

struct Tour<'a> {
    c: &'a Chart,
    t: &'a Topology,
    designated: &'a [Option<Dart>],
    emitted: Vec<bool>,
    /// Evaluations of the path word's prefixes.
    path: Vec<SpMatrix>,
    table: crate::symplectic::ClassTable,
    out: Vec<TwistLetter>,
}

impl Tour<'_> {
    fn face(&mut self, start: Dart) {
        let mut corner = start;
        loop {
            let v = self.t.vertex_of[corner];
            if !self.emitted[v] && self.c.vertices[v].kind.is_black() {
                self.emitted[v] = true;
                self.emit(v);
            }
            let x = self.t.sigma(self.c, corner);
            if self.designated[self.t.face_of[x]] == Some(x) {
                let label = self.c.label_of(x).clone();
                let crossing = self.c.twist_letter(&self.table, &label, if is_head(x) { 1 } else { -1 });
                if let Some(l) = &crossing {
                    let m = letter_matrix(l).mul(self.path.last().expect("path stack is never empty"));
                    self.path.push(m);
                }
                self.face(x);
                if crossing.is_some() {
                    self.path.pop();
                }
            }
            corner = alpha(x);
            if corner == start {
                break;
            }
        }
    }

    fn emit(&mut self, v: usize) {
        let Some(letter) = black_letter(self.c, v) else { return };
        if letter.is_separating() {
            self.out.push(letter);
            return;
        }
        let back = self.path.last().expect("path stack is never empty").inverse();
        self.out.push(TwistLetter { hclass: back.apply(&letter.hclass), ..letter });
    }
}
