//! Integer symplectic representation of words: transvections and evaluation.
//!
//! Homology vectors are written in the basis a_1..a_g, b_1..b_g, and
//! ⟨x,y⟩ = xᵀJy with J = ((0, I), (-I, 0)).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::words::{GenLetter, GenWord, TwistLetter, TwistWord, Word};

/// Transvection sign used for a right-handed twist letter.
///
/// A letter of sign `s` along `v` acts as `transvection(v, TWIST_ACTION_SIGN * s)`.
/// Words evaluate with the first letter applied first, so
/// `eval(a_1 ⋯ a_n) = M(a_n) ⋯ M(a_1)`.
pub const TWIST_ACTION_SIGN: i8 = -1;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpMatrix {
    g: usize,
    a: Vec<BigInt>,
}

impl SpMatrix {
    pub fn identity(g: usize) -> Self {
        let n = 2 * g;
        let mut a = vec![BigInt::zero(); n * n];
        for i in 0..n {
            a[i * n + i] = BigInt::one();
        }
        SpMatrix { g, a }
    }

    /// The structure matrix J.
    pub fn j(g: usize) -> Self {
        let n = 2 * g;
        let mut a = vec![BigInt::zero(); n * n];
        for i in 0..g {
            a[i * n + g + i] = BigInt::one();
            a[(g + i) * n + i] = -BigInt::one();
        }
        SpMatrix { g, a }
    }

    pub fn from_rows(g: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let m = Self::from_rows_unchecked(g, rows)?;
        if !m.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(m)
    }

    pub fn from_i64_rows(g: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(g, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub(crate) fn from_rows_unchecked(g: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = 2 * g;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("expected a {n}x{n} matrix")));
        }
        Ok(SpMatrix { g, a: rows.into_iter().flatten().collect() })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.dim() + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.a.chunks(self.dim()).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.g)
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut a = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.a[i * n + j].clone();
            }
        }
        SpMatrix { g: self.g, a }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.g, other.g, "genus mismatch in product");
        let n = self.dim();
        let mut a = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = &self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &other.a[k * n + j];
                    if !y.is_zero() {
                        a[i * n + j] += x * y;
                    }
                }
            }
        }
        SpMatrix { g: self.g, a }
    }

    pub fn is_symplectic(&self) -> bool {
        let j = Self::j(self.g);
        self.transpose().mul(&j).mul(self) == j
    }

    /// Inverse of a symplectic matrix, `-J Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = Self::j(self.g);
        let mut m = j.mul(&self.transpose()).mul(&j);
        for x in m.a.iter_mut() {
            *x = -&*x;
        }
        m
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).fold(BigInt::zero(), |acc, k| acc + &self.a[i * n + k] * &v[k]))
            .collect()
    }

    /// Left-multiplies in place by `transvection(v, sign)`, column by column.
    fn left_transvect(&mut self, v: &[BigInt], sign: i8) {
        let n = self.dim();
        let g = self.g;
        if v.iter().all(Zero::is_zero) {
            return;
        }
        for c in 0..n {
            // ⟨m, v⟩ for the column m
            let mut p = BigInt::zero();
            for i in 0..g {
                p += &self.a[i * n + c] * &v[g + i];
                p -= &self.a[(g + i) * n + c] * &v[i];
            }
            if p.is_zero() {
                continue;
            }
            if sign < 0 {
                p = -p;
            }
            for r in 0..n {
                if !v[r].is_zero() {
                    self.a[r * n + c] += &p * &v[r];
                }
            }
        }
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.a.chunks(self.dim()) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn pairing(x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
    if x.len() != y.len() || x.len() % 2 != 0 {
        return Err(Error::Dimension(format!("pairing of lengths {} and {}", x.len(), y.len())));
    }
    let g = x.len() / 2;
    let mut s = BigInt::zero();
    for i in 0..g {
        s += &x[i] * &y[g + i];
        s -= &x[g + i] * &y[i];
    }
    Ok(s)
}

/// The matrix of x ↦ x + sign·⟨x,v⟩·v.
pub fn transvection(v: &[BigInt], sign: i8) -> Result<SpMatrix> {
    if v.len() % 2 != 0 || v.is_empty() {
        return Err(Error::Dimension(format!("vector of length {}", v.len())));
    }
    let mut m = SpMatrix::identity(v.len() / 2);
    m.left_transvect(v, sign);
    Ok(m)
}

/// Homology classes of the standard curves c_0..c_{2g}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    g: usize,
    classes: Vec<Vec<BigInt>>,
}

impl ClassTable {
    pub fn standard(g: usize) -> Self {
        let n = 2 * g;
        let unit = |k: usize| {
            let mut v = vec![BigInt::zero(); n];
            v[k] = BigInt::one();
            v
        };
        let a = |i: usize| unit(i - 1);
        let b = |i: usize| unit(g + i - 1);
        let mut classes = vec![Vec::new(); n + 1];
        for i in 1..=g {
            classes[2 * i - 1] = b(i);
        }
        for i in 1..g {
            classes[2 * i] = a(i).iter().zip(a(i + 1)).map(|(x, y)| x - y).collect();
        }
        classes[n] = a(g);
        if g >= 2 {
            classes[0] = b(1).iter().zip(b(2)).map(|(x, y)| x + y).collect();
        } else {
            classes[0] = b(1);
        }
        ClassTable { g, classes }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn class(&self, i: usize) -> &[BigInt] {
        &self.classes[i]
    }
}

pub fn gen_to_twist(l: &GenLetter, table: &ClassTable) -> TwistLetter {
    TwistLetter::nonseparating(l.exp, table.class(l.index).to_vec())
}

pub fn to_twists(w: &GenWord, table: &ClassTable) -> Result<TwistWord> {
    if w.g() != table.g() {
        return Err(Error::Dimension(format!("word genus {} vs table genus {}", w.g(), table.g())));
    }
    Ok(Word::new_unchecked(w.g(), w.letters().iter().map(|l| gen_to_twist(l, table)).collect()))
}

pub fn letter_matrix(t: &TwistLetter) -> SpMatrix {
    let mut m = SpMatrix::identity(t.hclass.len() / 2);
    m.left_transvect(&t.hclass, TWIST_ACTION_SIGN * t.sign);
    m
}

pub fn eval_word(w: &TwistWord) -> SpMatrix {
    let mut m = SpMatrix::identity(w.g());
    for t in w.letters() {
        m.left_transvect(&t.hclass, TWIST_ACTION_SIGN * t.sign);
    }
    m
}

pub fn eval_gen(w: &GenWord) -> SpMatrix {
    let table = ClassTable::standard(w.g());
    let mut m = SpMatrix::identity(w.g());
    for l in w.letters() {
        m.left_transvect(table.class(l.index), TWIST_ACTION_SIGN * l.exp);
    }
    m
}

/// The letter w⁻¹·t·w, a twist along the image of t's curve.
pub fn conjugate_letter(t: &TwistLetter, w: &TwistWord) -> TwistLetter {
    if t.is_separating() {
        return t.clone();
    }
    TwistLetter { sign: t.sign, hclass: eval_word(w).apply(&t.hclass), sep_genus: None }
}

pub fn random_primitive<R: Rng>(g: usize, rng: &mut R) -> Vec<BigInt> {
    loop {
        let v: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-3..=3)).collect();
        let d = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if d == 1 {
            return v.into_iter().map(BigInt::from).collect();
        }
    }
}

pub fn random_symplectic(g: usize, n_twists: usize, seed: u64) -> SpMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_symplectic_with(g, n_twists, &mut rng)
}

pub fn random_symplectic_with<R: Rng>(g: usize, n_twists: usize, rng: &mut R) -> SpMatrix {
    let mut m = SpMatrix::identity(g);
    for _ in 0..n_twists {
        let v = random_primitive(g, rng);
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        m.left_transvect(&v, s);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{expand_derived, expand_relator, Derived, RelatorId};
    use num_traits::Signed;

    fn bv(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&t| BigInt::from(t)).collect()
    }

    #[test]
    fn pairing_basics() {
        assert_eq!(pairing(&bv(&[1, 0]), &bv(&[0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(pairing(&bv(&[2, 5]), &bv(&[2, 5])).unwrap(), BigInt::zero());
        assert!(pairing(&bv(&[1, 0]), &bv(&[1, 0, 0, 0])).is_err());
    }

    #[test]
    fn transvection_example() {
        let m = transvection(&bv(&[1, 0]), 1).unwrap();
        assert_eq!(m, SpMatrix::from_i64_rows(1, &[vec![1, -1], vec![0, 1]]).unwrap());
        assert!(transvection(&bv(&[0, 0, 0, 0]), 1).unwrap().is_identity());
    }

    #[test]
    fn class_table_matches_curve_configuration() {
        for g in 2..=6 {
            let t = ClassTable::standard(g);
            for i in 0..=2 * g {
                for j in 0..=2 * g {
                    let p = pairing(t.class(i), t.class(j)).unwrap().abs();
                    let adjacent = (i >= 1 && j >= 1 && i.abs_diff(j) == 1) || (i.min(j) == 0 && i.max(j) == 4);
                    assert_eq!(p, BigInt::from(adjacent as i64), "classes {i},{j} at g={g}");
                }
            }
        }
    }

    #[test]
    fn braid_and_chain_are_trivial() {
        assert!(eval_gen(&expand_relator(RelatorId::B(1), 3).unwrap()).is_identity());
        assert!(eval_gen(&expand_derived(Derived::Ell(1), 3).unwrap()).is_identity());
    }

    #[test]
    fn eval_is_antimultiplicative() {
        let u = expand_derived(Derived::Tau(1), 3).unwrap();
        let v = expand_derived(Derived::LanternNu, 3).unwrap();
        assert_eq!(eval_gen(&u.concat(&v)), eval_gen(&v).mul(&eval_gen(&u)));
    }

    #[test]
    fn random_is_deterministic_and_symplectic() {
        let a = random_symplectic(3, 7, 11);
        assert_eq!(a, random_symplectic(3, 7, 11));
        assert!(a.is_symplectic());
        assert!(random_symplectic(2, 0, 5).is_identity());
        assert!(a.mul(&a.inverse()).is_identity());
    }
}
