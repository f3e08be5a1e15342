//! Meyer's signature cocycle, exact inertia of rational forms, and the ternary
//! Maslov index of Lagrangian triples.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, mat_vec, QMatrix, Q};
use crate::symplectic::SpMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymForm {
    m: QMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }
}

impl SymForm {
    pub fn new(m: QMatrix) -> Result<Self> {
        if m.rows() != m.cols() || m != m.transpose() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymForm { m })
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        Self::new(QMatrix::from_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.m
    }

    /// The symmetric part (G + Gᵀ)/2 and whether it differed from G.
    pub fn symmetrize(g: &QMatrix) -> (SymForm, bool) {
        let t = g.transpose();
        if *g == t {
            return (SymForm { m: g.clone() }, false);
        }
        let half = BigRational::new(1.into(), 2.into());
        let mut s = g.clone();
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                s.set(i, j, (g.get(i, j) + t.get(i, j)) * &half);
            }
        }
        (SymForm { m: s }, true)
    }
}

/// Inertia by symmetric elimination; a zero diagonal with a nonzero entry
/// b at (i,j) is split off as the hyperbolic block ((0,b),(b,0)).
pub fn signature_of(form: &SymForm) -> Inertia {
    let n = form.dim();
    let mut a: Vec<Vec<Q>> = (0..n).map(|i| form.m.row_vec(i)).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut plus, mut minus) = (0, 0);
    loop {
        if active.is_empty() {
            break;
        }
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let i = active.remove(pos);
            let d = a[i][i].clone();
            if d.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            let col: Vec<Q> = active.iter().map(|&k| &a[k][i] / &d).collect();
            for (ki, &k) in active.iter().enumerate() {
                if col[ki].is_zero() {
                    continue;
                }
                for &l in &active {
                    if a[i][l].is_zero() {
                        continue;
                    }
                    let v = &a[k][l] - &col[ki] * &a[i][l];
                    a[k][l] = v;
                }
            }
            continue;
        }
        let mut pair = None;
        'outer: for (pi, &i) in active.iter().enumerate() {
            for &j in &active[pi + 1..] {
                if !a[i][j].is_zero() {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else { break };
        plus += 1;
        minus += 1;
        active.retain(|&k| k != i && k != j);
        let b = a[i][j].clone();
        let ki: Vec<Q> = active.iter().map(|&k| a[k][i].clone()).collect();
        let kj: Vec<Q> = active.iter().map(|&k| a[k][j].clone()).collect();
        for (x, &k) in active.iter().enumerate() {
            for (y, &l) in active.iter().enumerate() {
                let corr = (&ki[x] * &kj[y] + &kj[x] * &ki[y]) / &b;
                if !corr.is_zero() {
                    let v = &a[k][l] - corr;
                    a[k][l] = v;
                }
            }
        }
    }
    Inertia { plus, minus, zero: n - plus - minus }
}

fn int_to_q(m: &SpMatrix) -> QMatrix {
    QMatrix::from_int_rows(&m.rows())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauReport {
    pub value: i64,
    pub kernel_dim: usize,
    pub symmetrized: bool,
}

/// τ_g(A,B) with the kernel, Gram matrix and symmetrization flag exposed.
pub fn tau_detailed(a: &SpMatrix, b: &SpMatrix) -> Result<TauReport> {
    if a.g() != b.g() {
        return Err(Error::Dimension(format!("genus {} vs {}", a.g(), b.g())));
    }
    if !a.is_symplectic() || !b.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    Ok(tau_unchecked(a, b))
}

pub fn tau(a: &SpMatrix, b: &SpMatrix) -> Result<i64> {
    tau_detailed(a, b).map(|r| r.value)
}

pub(crate) fn tau_unchecked(a: &SpMatrix, b: &SpMatrix) -> TauReport {
    let n = a.dim();
    let g = a.g();
    let id = QMatrix::identity(n);
    let ainv = int_to_q(&a.inverse());
    let bq = int_to_q(b);
    let k = ainv.sub(&id).hcat(&bq.sub(&id));
    let basis = k.kernel();
    let d = basis.len();
    if d == 0 {
        return TauReport { value: 0, kernel_dim: 0, symmetrized: false };
    }
    // J (I - B) applied to each y
    let ib = id.sub(&bq);
    let jq = int_to_q(&SpMatrix::j(g));
    let jib = jq.mul(&ib);
    let xs: Vec<Vec<Q>> = basis.iter().map(|z| z[..n].iter().zip(&z[n..]).map(|(x, y)| x + y).collect()).collect();
    let ys: Vec<Vec<Q>> = basis.iter().map(|z| mat_vec(&jib, &z[n..])).collect();
    let mut gram = QMatrix::zeros(d, d);
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            gram.set(i, j, dot(x, y));
        }
    }
    let (form, symmetrized) = SymForm::symmetrize(&gram);
    TauReport { value: signature_of(&form).signature(), kernel_dim: d, symmetrized }
}

/// The symplectic form of an ambient space, as a 2n×2n antisymmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    omega: QMatrix,
}

impl Ambient {
    pub fn standard(n: usize) -> Self {
        let mut om = QMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            om.set(i, n + i, Q::one());
            om.set(n + i, i, -Q::one());
        }
        Ambient { omega: om }
    }

    /// H ⊕ H with μ ⊕ (−μ), where μ is the intersection form of genus g.
    pub fn doubled(g: usize) -> Self {
        let n = 2 * g;
        let j = int_to_q(&SpMatrix::j(g));
        let mut om = QMatrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                om.set(r, c, j.get(r, c).clone());
                om.set(n + r, n + c, -j.get(r, c).clone());
            }
        }
        Ambient { omega: om }
    }

    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    pub fn omega(&self, x: &[Q], y: &[Q]) -> Q {
        dot(x, &mat_vec(&self.omega, y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lagrangian {
    ambient: Ambient,
    basis: QMatrix,
}

impl Lagrangian {
    pub fn new(ambient: Ambient, basis: QMatrix) -> Result<Self> {
        let dim = ambient.dim();
        if basis.rows() != dim || 2 * basis.cols() != dim {
            return Err(Error::Dimension(format!(
                "basis is {}x{} in a space of dimension {dim}",
                basis.rows(),
                basis.cols()
            )));
        }
        if basis.rank() != basis.cols() {
            return Err(Error::NotLagrangian("basis is rank deficient".into()));
        }
        if !basis.transpose().mul(&ambient.omega).mul(&basis).is_zero() {
            return Err(Error::NotLagrangian("form does not vanish on the basis".into()));
        }
        Ok(Lagrangian { ambient, basis })
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn half_dim(&self) -> usize {
        self.basis.cols()
    }

    /// Same subspace, possibly different bases.
    pub fn same_subspace(&self, other: &Lagrangian) -> bool {
        self.ambient == other.ambient && self.basis.hcat(&other.basis).rank() == self.half_dim()
    }
}

/// Signature of Ψ(v,w) = ω(v, w₃) on (L₃ + L₁) ∩ L₂, where w = w₁ + w₃.
pub fn maslov(l1: &Lagrangian, l2: &Lagrangian, l3: &Lagrangian) -> Result<i64> {
    if l1.ambient != l2.ambient || l2.ambient != l3.ambient {
        return Err(Error::Dimension("Lagrangians live in different ambient spaces".into()));
    }
    let n = l1.half_dim();
    let neg_l2 = l2.basis.scale(&-Q::one());
    let sys = l1.basis.hcat(&l3.basis).hcat(&neg_l2);
    let ker = sys.kernel();
    if ker.is_empty() {
        return Ok(0);
    }
    let vs: Vec<Vec<Q>> = ker.iter().map(|k| mat_vec(&l2.basis, &k[2 * n..])).collect();
    let w3s: Vec<Vec<Q>> = ker.iter().map(|k| mat_vec(&l3.basis, &k[n..2 * n])).collect();
    let d = ker.len();
    let mut gram = QMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            gram.set(i, j, l1.ambient.omega(&vs[i], &w3s[j]));
        }
    }
    let (form, _) = SymForm::symmetrize(&gram);
    Ok(signature_of(&form).signature())
}

/// Graphs of A⁻¹, I and B inside H ⊕ H, each as {(−ξ, Mξ)}.
pub fn triple_from_pair(a: &SpMatrix, b: &SpMatrix) -> Result<(Lagrangian, Lagrangian, Lagrangian)> {
    if a.g() != b.g() {
        return Err(Error::Dimension(format!("genus {} vs {}", a.g(), b.g())));
    }
    if !a.is_symplectic() || !b.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let g = a.g();
    let n = 2 * g;
    let amb = Ambient::doubled(g);
    let neg = QMatrix::identity(n).scale(&-Q::one());
    let graph = |m: QMatrix| Lagrangian::new(amb.clone(), neg.vcat(&m));
    Ok((graph(int_to_q(&a.inverse()))?, graph(QMatrix::identity(n))?, graph(int_to_q(b))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::symplectic::random_symplectic;

    fn form(rows: &[&[i64]]) -> SymForm {
        SymForm::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(signature_of(&form(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]])), Inertia { plus: 0, minus: 0, zero: 3 });
        assert_eq!(signature_of(&form(&[&[0, 1], &[1, 0]])), Inertia { plus: 1, minus: 1, zero: 0 });
        assert_eq!(signature_of(&form(&[&[3, 0, 0], &[0, -2, 0], &[0, 0, 0]])), Inertia { plus: 1, minus: 1, zero: 1 });
        assert_eq!(signature_of(&form(&[&[1, 2], &[2, 4]])), Inertia { plus: 1, minus: 0, zero: 1 });
    }

    #[test]
    fn nonsymmetric_rejected() {
        assert_eq!(SymForm::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]]), Err(Error::NotSymmetric));
    }

    #[test]
    fn tau_normalized() {
        let b = random_symplectic(2, 5, 3);
        let i = SpMatrix::identity(2);
        assert_eq!(tau(&i, &b).unwrap(), 0);
        assert_eq!(tau(&b, &i).unwrap(), 0);
        assert_eq!(tau(&b, &b.inverse()).unwrap(), 0);
    }

    #[test]
    fn identity_triple_is_degenerate() {
        let i = SpMatrix::identity(2);
        let (l1, l2, l3) = triple_from_pair(&i, &i).unwrap();
        assert!(l1.same_subspace(&l2) && l2.same_subspace(&l3));
        assert_eq!(maslov(&l1, &l2, &l3).unwrap(), 0);
    }

    #[test]
    fn non_lagrangian_rejected() {
        let amb = Ambient::standard(1);
        let basis = QMatrix::from_rows(vec![vec![q(1)], vec![q(0)]]);
        assert!(Lagrangian::new(amb.clone(), basis).is_ok());
        let rank0 = QMatrix::from_rows(vec![vec![q(0)], vec![q(0)]]);
        assert!(Lagrangian::new(amb, rank0).is_err());
        let amb2 = Ambient::standard(2);
        let bad = QMatrix::from_rows(vec![vec![q(1), q(0)], vec![q(0), q(0)], vec![q(0), q(1)], vec![q(0), q(0)]]);
        assert!(matches!(Lagrangian::new(amb2, bad), Err(Error::NotLagrangian(_))));
    }
}
