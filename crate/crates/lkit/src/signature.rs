//! Local signatures of monodromy factorizations: s(w), I_g(w), Hurwitz moves
//! and the invariant tuple (n_0^±, n_h^±, σ).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meyer::tau_unchecked;
use crate::symplectic::{conjugate_letter, eval_word, letter_matrix, to_twists, ClassTable, SpMatrix};
use crate::words::{GenWord, Letter, TwistLetter, TwistWord, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    word: TwistWord,
    base_genus: usize,
}

impl Factorization {
    /// Over the sphere the word must evaluate to the identity in Sp(2g,ℤ).
    pub fn new(word: TwistWord, base_genus: usize) -> Result<Self> {
        if base_genus == 0 && !eval_word(&word).is_identity() {
            return Err(Error::Mismatch("factorization does not evaluate to the identity".into()));
        }
        Ok(Factorization { word, base_genus })
    }

    pub fn from_gen(word: &GenWord, base_genus: usize) -> Result<Self> {
        Self::new(to_twists(word, &ClassTable::standard(word.g()))?, base_genus)
    }

    pub fn g(&self) -> usize {
        self.word.g()
    }

    pub fn word(&self) -> &TwistWord {
        &self.word
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantTuple {
    pub n0_plus: u64,
    pub n0_minus: u64,
    /// Entry h−1 counts type II_h fibers, for h = 1..⌊g/2⌋.
    pub nh_plus: Vec<u64>,
    pub nh_minus: Vec<u64>,
    pub sigma: i64,
}

impl InvariantTuple {
    pub fn zero(g: usize) -> Self {
        InvariantTuple { n0_plus: 0, n0_minus: 0, nh_plus: vec![0; g / 2], nh_minus: vec![0; g / 2], sigma: 0 }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.nh_plus.len().max(o.nh_plus.len());
        let at = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        InvariantTuple {
            n0_plus: self.n0_plus + o.n0_plus,
            n0_minus: self.n0_minus + o.n0_minus,
            nh_plus: (0..n).map(|i| at(&self.nh_plus, i) + at(&o.nh_plus, i)).collect(),
            nh_minus: (0..n).map(|i| at(&self.nh_minus, i) + at(&o.nh_minus, i)).collect(),
            sigma: self.sigma + o.sigma,
        }
    }

    pub(crate) fn count_letter(&mut self, t: &TwistLetter) {
        match t.sep_genus {
            None if t.sign > 0 => self.n0_plus += 1,
            None => self.n0_minus += 1,
            Some(0) => {}
            Some(h) => {
                let v = if t.sign > 0 { &mut self.nh_plus } else { &mut self.nh_minus };
                if v.len() < h {
                    v.resize(h, 0);
                }
                v[h - 1] += 1;
            }
        }
    }
}

/// Right-handed minus left-handed separating letters; trivial curves count.
pub fn sep_count(w: &TwistWord) -> i64 {
    w.letters().iter().filter(|t| t.is_separating()).map(|t| t.sign as i64).sum()
}

pub fn i_g(w: &TwistWord) -> i64 {
    let n = w.len();
    let mut total = 0i64;
    if n >= 2 {
        let mats: Vec<SpMatrix> = w.letters().iter().map(letter_matrix).collect();
        let mut suffix = mats[n - 1].clone();
        for k in (0..n - 1).rev() {
            total += tau_unchecked(&mats[k], &suffix).value;
            suffix = suffix.mul(&mats[k]);
        }
    }
    -total - sep_count(w)
}

pub fn i_g_gen(w: &GenWord) -> i64 {
    let table = ClassTable::standard(w.g());
    i_g(&to_twists(w, &table).expect("table built for the word's genus"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlideDir {
    Left,
    Right,
}

/// Elementary Hurwitz move at positions i, i+1 (1-based).
pub fn hurwitz_slide(f: &Factorization, i: usize, dir: SlideDir) -> Result<Factorization> {
    let n = f.len();
    if i == 0 || i >= n {
        return Err(Error::Param(format!("slide index {i} outside 1..{}", n.saturating_sub(1))));
    }
    let g = f.g();
    let mut ls = f.word.letters().to_vec();
    let (a, b) = (ls[i - 1].clone(), ls[i].clone());
    match dir {
        SlideDir::Right => {
            ls[i - 1] = b.clone();
            ls[i] = conjugate_letter(&a, &Word::new_unchecked(g, vec![b]));
        }
        SlideDir::Left => {
            ls[i - 1] = conjugate_letter(&b, &Word::new_unchecked(g, vec![a.inverse()]));
            ls[i] = a;
        }
    }
    Ok(Factorization { word: Word::new_unchecked(g, ls), base_genus: f.base_genus })
}

/// Replaces every letter α by w⁻¹αw.
pub fn conjugate_all(f: &Factorization, w: &TwistWord) -> Result<Factorization> {
    if w.g() != f.g() {
        return Err(Error::Dimension(format!("conjugator genus {} vs {}", w.g(), f.g())));
    }
    let ls = f.word.letters().iter().map(|t| conjugate_letter(t, w)).collect();
    Ok(Factorization { word: Word::new_unchecked(f.g(), ls), base_genus: f.base_genus })
}

pub fn tuple_from_factorization(f: &Factorization) -> Result<InvariantTuple> {
    if f.base_genus > 0 {
        return Err(Error::Unsupported(
            "σ of a factorization over a higher-genus base needs its chart".into(),
        ));
    }
    let mut t = InvariantTuple::zero(f.g());
    for l in f.word.letters() {
        t.count_letter(l);
    }
    t.sigma = i_g(&f.word);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{expand_derived, expand_relator, mirror, Derived, RelatorId};

    fn ell_sigma(g: usize, h: usize) -> TwistWord {
        let table = ClassTable::standard(g);
        let mut w = to_twists(&expand_derived(Derived::Ell(h), g).unwrap(), &table).unwrap().inverse();
        w.push(TwistLetter::separating(1, g, h));
        w
    }

    #[test]
    fn known_values_g3() {
        assert_eq!(i_g_gen(&expand_relator(RelatorId::C, 3).unwrap()), -6);
        assert_eq!(i_g_gen(&expand_relator(RelatorId::L, 3).unwrap()), -1);
        assert_eq!(i_g(&ell_sigma(3, 1)), 7);
    }

    #[test]
    fn sep_count_signed() {
        let w = ell_sigma(3, 1);
        assert_eq!(sep_count(&w), 1);
        assert_eq!(sep_count(&mirror(&w)), -1);
    }

    #[test]
    fn tuple_of_ell_sigma() {
        let f = Factorization::new(ell_sigma(3, 1), 0).unwrap();
        let t = tuple_from_factorization(&f).unwrap();
        assert_eq!((t.n0_plus, t.n0_minus, t.nh_plus.clone(), t.sigma), (0, 12, vec![1], 7));
    }

    #[test]
    fn twist_and_inverse() {
        let w = GenWord::from_pairs(3, &[(1, 1), (1, -1)]).unwrap();
        let f = Factorization::from_gen(&w, 0).unwrap();
        let t = tuple_from_factorization(&f).unwrap();
        assert_eq!((t.n0_plus, t.n0_minus, t.sigma), (1, 1, 0));
    }

    #[test]
    fn slide_round_trip() {
        let f = Factorization::from_gen(&expand_relator(RelatorId::B(1), 3).unwrap(), 0).unwrap();
        for i in 1..f.len() {
            let r = hurwitz_slide(&f, i, SlideDir::Right).unwrap();
            assert_eq!(hurwitz_slide(&r, i, SlideDir::Left).unwrap(), f);
            assert!(eval_word(r.word()).is_identity());
        }
        assert!(hurwitz_slide(&f, 0, SlideDir::Right).is_err());
        assert!(hurwitz_slide(&f, f.len(), SlideDir::Left).is_err());
    }

    #[test]
    fn higher_base_needs_chart() {
        let f = Factorization::new(TwistWord::empty(3), 1).unwrap();
        assert!(matches!(tuple_from_factorization(&f), Err(Error::Unsupported(_))));
    }

    #[test]
    fn non_identity_rejected() {
        let w = GenWord::from_pairs(3, &[(1, 1)]).unwrap();
        assert!(Factorization::from_gen(&w, 0).is_err());
        assert!(Factorization::from_gen(&w, 1).is_ok());
    }
}
