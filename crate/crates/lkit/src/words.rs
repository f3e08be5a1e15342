//! Generator alphabet, Dehn-twist letters and the Wajnryb relator words.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Letter: Clone + PartialEq + Eq + fmt::Debug {
    fn inverse(&self) -> Self;
    fn check(&self, g: usize) -> Result<()>;
}

/// ζ_index raised to ±1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenLetter {
    pub index: usize,
    pub exp: i8,
}

impl GenLetter {
    pub fn new(index: usize, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        GenLetter { index, exp }
    }
}

impl Letter for GenLetter {
    fn inverse(&self) -> Self {
        GenLetter { index: self.index, exp: -self.exp }
    }

    fn check(&self, g: usize) -> Result<()> {
        if self.index > 2 * g {
            return Err(Error::Param(format!("generator z{} out of range for g={g}", self.index)));
        }
        if self.exp != 1 && self.exp != -1 {
            return Err(Error::Param(format!("exponent {} is not ±1", self.exp)));
        }
        Ok(())
    }
}

impl fmt::Display for GenLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp > 0 {
            write!(f, "z{}", self.index)
        } else {
            write!(f, "Z{}", self.index)
        }
    }
}

/// A Dehn twist along a curve known through its homology class.
///
/// `sep_genus` is present exactly for separating curves (0 for a curve that
/// bounds a disk), and then the class is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistLetter {
    pub sign: i8,
    pub hclass: Vec<BigInt>,
    pub sep_genus: Option<usize>,
}

impl TwistLetter {
    pub fn nonseparating(sign: i8, hclass: Vec<BigInt>) -> Self {
        TwistLetter { sign, hclass, sep_genus: None }
    }

    pub fn separating(sign: i8, g: usize, h: usize) -> Self {
        TwistLetter { sign, hclass: vec![BigInt::zero(); 2 * g], sep_genus: Some(h) }
    }

    pub fn is_separating(&self) -> bool {
        self.sep_genus.is_some()
    }
}

impl Letter for TwistLetter {
    fn inverse(&self) -> Self {
        TwistLetter { sign: -self.sign, ..self.clone() }
    }

    fn check(&self, g: usize) -> Result<()> {
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::Param(format!("twist sign {} is not ±1", self.sign)));
        }
        if self.hclass.len() != 2 * g {
            return Err(Error::Dimension(format!(
                "twist class has length {}, expected {}",
                self.hclass.len(),
                2 * g
            )));
        }
        let zero = self.hclass.iter().all(Zero::is_zero);
        match self.sep_genus {
            Some(h) if !zero => Err(Error::Param(format!("separating twist (h={h}) with nonzero class"))),
            Some(h) if h > g / 2 => Err(Error::Param(format!("separating genus {h} exceeds g/2"))),
            None if zero => Err(Error::Param("non-separating twist with zero class".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TwistLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cls: Vec<String> = self.hclass.iter().map(|x| x.to_string()).collect();
        write!(f, "t({}{};{}", if self.sign > 0 { "+" } else { "-" }, 1, cls.join(","))?;
        if let Some(h) = self.sep_genus {
            write!(f, ";h={h}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word<L> {
    g: usize,
    letters: Vec<L>,
}

pub type GenWord = Word<GenLetter>;
pub type TwistWord = Word<TwistLetter>;

impl<L: Letter> Word<L> {
    pub fn new(g: usize, letters: Vec<L>) -> Result<Self> {
        for l in &letters {
            l.check(g)?;
        }
        Ok(Word { g, letters })
    }

    pub(crate) fn new_unchecked(g: usize, letters: Vec<L>) -> Self {
        Word { g, letters }
    }

    pub fn empty(g: usize) -> Self {
        Word { g, letters: Vec::new() }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<L> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { g: self.g, letters }
    }

    pub fn push(&mut self, l: L) {
        self.letters.push(l);
    }

    pub fn inverse(&self) -> Self {
        Word { g: self.g, letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend(self.letters.iter().cloned());
        }
        Word { g: self.g, letters }
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { g: self.g, letters }
    }

    /// Whether `other` is a cyclic rotation of `self`.
    pub fn is_cyclic_permutation_of(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        cyclic_offset(&self.letters, &other.letters).is_some()
    }
}

/// Smallest `k` with `a` rotated by `k` equal to `b`.
pub(crate) fn cyclic_offset<T: PartialEq>(a: &[T], b: &[T]) -> Option<usize> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    if n == 0 {
        return Some(0);
    }
    (0..n).find(|&k| (0..n).all(|j| a[(k + j) % n] == b[j]))
}

impl GenWord {
    pub fn from_pairs(g: usize, pairs: &[(usize, i8)]) -> Result<Self> {
        Word::new(g, pairs.iter().map(|&(i, e)| GenLetter::new(i, e)).collect())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exp as i64).sum()
    }
}

impl<L: fmt::Display> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn free_reduce<L: Letter>(w: &Word<L>) -> Word<L> {
    let mut out: Vec<L> = Vec::with_capacity(w.len());
    for l in &w.letters {
        if out.last().is_some_and(|top| *top == l.inverse()) {
            out.pop();
        } else {
            out.push(l.clone());
        }
    }
    Word { g: w.g, letters: out }
}

/// Reversed order with every letter inverted.
pub fn mirror<L: Letter>(w: &Word<L>) -> Word<L> {
    w.inverse()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RelatorId {
    F(usize, usize),
    B(usize),
    C,
    L,
    H,
    /// Luo flavor: trivial curve.
    T,
    /// Luo flavor: conjugation.
    P,
    /// Luo flavor: two-chain.
    C2Chain,
    /// Luo flavor: lantern.
    Lantern,
}

impl RelatorId {
    pub fn is_luo(&self) -> bool {
        matches!(self, RelatorId::T | RelatorId::P | RelatorId::C2Chain | RelatorId::Lantern)
    }

    pub fn check(&self, g: usize) -> Result<()> {
        if self.is_luo() {
            return Ok(());
        }
        if g < 3 {
            return Err(Error::Param(format!("Wajnryb relators need g >= 3, got {g}")));
        }
        match *self {
            RelatorId::F(0, j) => {
                if j == 0 || j == 4 || j > 2 * g {
                    return Err(Error::Param(format!("r_F(0,{j}) out of range")));
                }
            }
            RelatorId::F(i, j) => {
                if !(1 <= i && i + 1 < j && j <= 2 * g) {
                    return Err(Error::Param(format!("r_F({i},{j}) out of range")));
                }
            }
            RelatorId::B(i) => {
                if i >= 2 * g {
                    return Err(Error::Param(format!("r_B({i}) out of range")));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Exponent sum of the expanded relator; zero for everything but r_C and r_L.
    pub fn exponent_sum(&self) -> i64 {
        match self {
            RelatorId::C => 10,
            RelatorId::L => 1,
            _ => 0,
        }
    }

    /// Every Wajnryb relator for genus g.
    pub fn all(g: usize) -> Vec<RelatorId> {
        let mut out = Vec::new();
        for i in 1..2 * g {
            for j in i + 2..=2 * g {
                out.push(RelatorId::F(i, j));
            }
        }
        for j in (1..=2 * g).filter(|&j| j != 4) {
            out.push(RelatorId::F(0, j));
        }
        for i in 0..2 * g {
            out.push(RelatorId::B(i));
        }
        out.extend([RelatorId::C, RelatorId::L, RelatorId::H]);
        out
    }
}

impl fmt::Display for RelatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelatorId::F(i, j) => write!(f, "r_F({i},{j})"),
            RelatorId::B(i) => write!(f, "r_B({i})"),
            RelatorId::C => write!(f, "r_C"),
            RelatorId::L => write!(f, "r_L"),
            RelatorId::H => write!(f, "r_H"),
            RelatorId::T => write!(f, "r_T"),
            RelatorId::P => write!(f, "r_P"),
            RelatorId::C2Chain => write!(f, "r_C2chain"),
            RelatorId::Lantern => write!(f, "r_Lantern"),
        }
    }
}

impl std::str::FromStr for RelatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Param(format!("unknown relator '{s}'"));
        let args = |body: &str| -> Result<Vec<usize>> {
            body.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        let simple = match s {
            "r_C" => Some(RelatorId::C),
            "r_L" => Some(RelatorId::L),
            "r_H" => Some(RelatorId::H),
            "r_T" => Some(RelatorId::T),
            "r_P" => Some(RelatorId::P),
            "r_C2chain" => Some(RelatorId::C2Chain),
            "r_Lantern" => Some(RelatorId::Lantern),
            _ => None,
        };
        if let Some(r) = simple {
            return Ok(r);
        }
        let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|t| t.strip_suffix(')'));
        if let Some(body) = inner("r_F(") {
            let v = args(body)?;
            if v.len() == 2 {
                return Ok(RelatorId::F(v[0], v[1]));
            }
        }
        if let Some(body) = inner("r_B(") {
            let v = args(body)?;
            if v.len() == 1 {
                return Ok(RelatorId::B(v[0]));
            }
        }
        Err(bad())
    }
}

impl Serialize for RelatorId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RelatorId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn z(idx: &[usize]) -> Vec<GenLetter> {
    idx.iter().map(|&i| GenLetter::new(i, 1)).collect()
}

fn zi(idx: &[usize]) -> Vec<GenLetter> {
    idx.iter().map(|&i| GenLetter::new(i, -1)).collect()
}

fn inv(w: &[GenLetter]) -> Vec<GenLetter> {
    w.iter().rev().map(Letter::inverse).collect()
}

fn cat(parts: &[&[GenLetter]]) -> Vec<GenLetter> {
    parts.concat()
}

/// Named sub-words used inside the relators.
///
/// `LanternTau2` is the τ_2 of the lantern relation (ζ4ζ5ζ3ζ4); the hyperelliptic
/// family `Tau(i)` has τ_1 = ζ2ζ3ζ1ζ2 and τ_i = ζ_{2i}ζ_{2i-1}ζ_{2i+1}ζ_{2i} for i ≥ 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Derived {
    Tau(usize),
    LanternTau2,
    LanternMu,
    LanternNu,
    Delta3,
    Nu(usize),
    Mu(usize),
    DeltaG,
    Ell(usize),
    Ell0(usize),
}

impl std::str::FromStr for Derived {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Param(format!("unknown derived word '{s}'"));
        match s {
            "lantern_tau2" => return Ok(Derived::LanternTau2),
            "lantern_mu" | "mu" => return Ok(Derived::LanternMu),
            "lantern_nu" | "nu" => return Ok(Derived::LanternNu),
            "delta3" => return Ok(Derived::Delta3),
            "delta_g" => return Ok(Derived::DeltaG),
            _ => {}
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let k: usize = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        match name {
            "tau" => Ok(Derived::Tau(k)),
            "nu" => Ok(Derived::Nu(k)),
            "mu" => Ok(Derived::Mu(k)),
            "ell" => Ok(Derived::Ell(k)),
            "ell0" => Ok(Derived::Ell0(k)),
            _ => Err(bad()),
        }
    }
}

fn tau_hyp(i: usize) -> Vec<GenLetter> {
    if i == 1 {
        z(&[2, 3, 1, 2])
    } else {
        z(&[2 * i, 2 * i - 1, 2 * i + 1, 2 * i])
    }
}

fn lantern_tau2() -> Vec<GenLetter> {
    z(&[4, 5, 3, 4])
}

fn lantern_mu() -> Vec<GenLetter> {
    let t2 = lantern_tau2();
    cat(&[&z(&[5, 6]), &t2, &z(&[0]), &inv(&t2), &zi(&[6, 5])])
}

fn lantern_nu() -> Vec<GenLetter> {
    cat(&[&z(&[1, 2, 3, 4, 0]), &zi(&[4, 3, 2, 1])])
}

fn delta3() -> Vec<GenLetter> {
    let mu = lantern_mu();
    cat(&[&zi(&[6, 5, 4, 3, 2]), &inv(&mu), &lantern_nu(), &mu, &z(&[2, 3, 4, 5, 6])])
}

fn nu_hyp(i: usize) -> Vec<GenLetter> {
    if i == 1 {
        let core = z(&[4, 3, 2, 1, 1, 2, 3, 4]);
        return cat(&[&inv(&core), &z(&[0]), &core]);
    }
    let (a, b) = (tau_hyp(i - 1), tau_hyp(i));
    cat(&[&a, &b, &nu_hyp(i - 1), &inv(&b), &inv(&a)])
}

fn mu_hyp(i: usize) -> Vec<GenLetter> {
    if i == 1 {
        return cat(&[&z(&[2, 3, 4]), &nu_hyp(1), &zi(&[1, 2, 3, 4])]);
    }
    cat(&[&z(&[2 * i, 2 * i + 1, 2 * i + 2]), &nu_hyp(i), &zi(&[2 * i - 1, 2 * i, 2 * i + 1, 2 * i + 2])])
}

fn delta_g(g: usize) -> Vec<GenLetter> {
    let mut w = Vec::new();
    for i in (1..g).rev() {
        w.extend(inv(&mu_hyp(i)));
    }
    w.extend(z(&[1]));
    for i in 1..g {
        w.extend(mu_hyp(i));
    }
    w
}

fn ell(h: usize) -> Vec<GenLetter> {
    let base: Vec<usize> = (1..=2 * h).collect();
    z(&base).repeat(4 * h + 2)
}

pub fn expand_derived(name: Derived, g: usize) -> Result<GenWord> {
    if g < 3 {
        return Err(Error::Param(format!("derived words need g >= 3, got {g}")));
    }
    let range = |k: usize, lo: usize, hi: usize, what: &str| {
        if k < lo || k > hi {
            Err(Error::Param(format!("{what}({k}) out of range {lo}..={hi}")))
        } else {
            Ok(())
        }
    };
    let letters = match name {
        Derived::Tau(i) => {
            range(i, 1, g - 1, "tau")?;
            tau_hyp(i)
        }
        Derived::LanternTau2 => lantern_tau2(),
        Derived::LanternMu => lantern_mu(),
        Derived::LanternNu => lantern_nu(),
        Derived::Delta3 => delta3(),
        Derived::Nu(i) => {
            range(i, 1, g - 1, "nu")?;
            nu_hyp(i)
        }
        Derived::Mu(i) => {
            range(i, 1, g - 1, "mu")?;
            mu_hyp(i)
        }
        Derived::DeltaG => delta_g(g),
        Derived::Ell(h) => {
            range(h, 1, g / 2, "ell")?;
            ell(h)
        }
        Derived::Ell0(i) => {
            range(i, 0, 2 * g, "ell0")?;
            z(&[i])
        }
    };
    Ok(Word::new_unchecked(g, letters))
}

pub fn expand_relator(id: RelatorId, g: usize) -> Result<GenWord> {
    if id.is_luo() {
        return Err(Error::Param(format!("{id} has generic twist letters and no generator expansion")));
    }
    id.check(g)?;
    let letters = match id {
        RelatorId::F(i, j) => cat(&[&z(&[i, j]), &zi(&[i, j])]),
        RelatorId::B(0) => cat(&[&z(&[0, 4, 0]), &zi(&[4, 0, 4])]),
        RelatorId::B(i) => cat(&[&z(&[i, i + 1, i]), &zi(&[i + 1, i, i + 1])]),
        RelatorId::C => {
            let core = z(&[4, 3, 2, 1, 1, 2, 3, 4]);
            cat(&[&z(&[3, 2, 1]).repeat(4), &inv(&core), &zi(&[0]), &core, &zi(&[0])])
        }
        RelatorId::L => {
            let (t1, t2) = (tau_hyp(1), lantern_tau2());
            cat(&[
                &delta3(),
                &z(&[1, 3, 5]),
                &t1,
                &t2,
                &zi(&[0]),
                &inv(&t2),
                &inv(&t1),
                &t2,
                &zi(&[0]),
                &inv(&t2),
                &zi(&[0]),
            ])
        }
        RelatorId::H => {
            let mut w: Vec<usize> = (2..=2 * g).rev().collect();
            w.extend([1, 1]);
            w.extend(2..=2 * g);
            let w = z(&w);
            let d = delta_g(g);
            cat(&[&w, &d, &inv(&w), &inv(&d)])
        }
        _ => unreachable!(),
    };
    Ok(Word::new_unchecked(g, letters))
}
