use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{white_tally, BlackType, Chart, Flavor, Label, VertexKind};
use crate::error::{Error, Result};
use crate::signature::InvariantTuple;
use crate::words::RelatorId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub flavor: Flavor,
    pub g: usize,
    /// Signed white counts: type r minus type r⁻¹.
    pub white: BTreeMap<RelatorId, i64>,
    /// Wajnryb flavor only: black ℓ_0(i)^± vertices by generator.
    pub n0_plus_by_gen: BTreeMap<usize, u64>,
    pub n0_minus_by_gen: BTreeMap<usize, u64>,
    pub n0_plus: u64,
    pub n0_minus: u64,
    pub nh_plus: Vec<u64>,
    pub nh_minus: Vec<u64>,
}

impl Counts {
    pub fn zero(g: usize, flavor: Flavor) -> Self {
        Counts {
            flavor,
            g,
            white: BTreeMap::new(),
            n0_plus_by_gen: BTreeMap::new(),
            n0_minus_by_gen: BTreeMap::new(),
            n0_plus: 0,
            n0_minus: 0,
            nh_plus: vec![0; g / 2],
            nh_minus: vec![0; g / 2],
        }
    }

    /// Luo count vector with the given signed white counts and no black vertices.
    pub fn luo(g: usize, n_t: i64, n_p: i64, n_c: i64, n_l: i64) -> Self {
        let mut c = Counts::zero(g, Flavor::Luo);
        for (id, n) in [(RelatorId::T, n_t), (RelatorId::P, n_p), (RelatorId::C2Chain, n_c), (RelatorId::Lantern, n_l)] {
            if n != 0 {
                c.white.insert(id, n);
            }
        }
        c
    }

    pub fn of(chart: &Chart) -> Self {
        let mut c = Counts::zero(chart.g, chart.flavor);
        c.white = white_tally(chart);
        for v in &chart.vertices {
            let VertexKind::Black { ty, sign } = &v.kind else { continue };
            let plus = *sign > 0;
            let sep = match ty {
                BlackType::Ell0(i) => {
                    let m = if plus { &mut c.n0_plus_by_gen } else { &mut c.n0_minus_by_gen };
                    *m.entry(*i).or_insert(0) += 1;
                    None
                }
                BlackType::Ell(h) => Some(*h),
                BlackType::Twist => {
                    let label = v.rotation.iter().map(|&d| chart.label_of(d)).find(|l| !l.is_ghost());
                    match label {
                        Some(Label::Curve(t)) => t.sep_genus,
                        _ => None,
                    }
                }
            };
            match sep {
                None => {
                    if plus {
                        c.n0_plus += 1
                    } else {
                        c.n0_minus += 1
                    }
                }
                Some(0) => {}
                Some(h) => {
                    let v = if plus { &mut c.nh_plus } else { &mut c.nh_minus };
                    if v.len() < h {
                        v.resize(h, 0);
                    }
                    v[h - 1] += 1;
                }
            }
        }
        c
    }

    pub fn white_count(&self, id: RelatorId) -> i64 {
        self.white.get(&id).copied().unwrap_or(0)
    }

    pub fn nh(&self, h: usize) -> i64 {
        let at = |v: &[u64]| v.get(h - 1).copied().unwrap_or(0) as i64;
        at(&self.nh_plus) - at(&self.nh_minus)
    }

    pub fn add(&self, o: &Counts) -> Counts {
        let mut out = self.clone();
        for (k, v) in &o.white {
            *out.white.entry(*k).or_insert(0) += v;
        }
        out.white.retain(|_, v| *v != 0);
        for (k, v) in &o.n0_plus_by_gen {
            *out.n0_plus_by_gen.entry(*k).or_insert(0) += v;
        }
        for (k, v) in &o.n0_minus_by_gen {
            *out.n0_minus_by_gen.entry(*k).or_insert(0) += v;
        }
        out.n0_plus += o.n0_plus;
        out.n0_minus += o.n0_minus;
        let n = out.nh_plus.len().max(o.nh_plus.len());
        out.nh_plus.resize(n, 0);
        out.nh_minus.resize(n, 0);
        for (i, x) in o.nh_plus.iter().enumerate() {
            out.nh_plus[i] += x;
        }
        for (i, x) in o.nh_minus.iter().enumerate() {
            out.nh_minus[i] += x;
        }
        out
    }

    /// Black-vertex part of the invariant tuple with the given σ.
    pub fn tuple(&self, sigma: i64) -> InvariantTuple {
        let mut nh_plus = self.nh_plus.clone();
        let mut nh_minus = self.nh_minus.clone();
        nh_plus.resize(self.g / 2, 0);
        nh_minus.resize(self.g / 2, 0);
        InvariantTuple { n0_plus: self.n0_plus, n0_minus: self.n0_minus, nh_plus, nh_minus, sigma }
    }
}

pub fn sigma_chart(c: &Chart) -> Result<i64> {
    if c.flavor != Flavor::Wajnryb {
        return Err(Error::Mismatch("sigma_chart needs a Wajnryb chart; use sigma_luo".into()));
    }
    Ok(sigma_from_counts(&Counts::of(c)))
}

pub(crate) fn sigma_from_counts(k: &Counts) -> i64 {
    let mut s = -6 * k.white_count(RelatorId::C) - k.white_count(RelatorId::L);
    for h in 1..=k.nh_plus.len().max(k.nh_minus.len()) {
        let h64 = h as i64;
        s += (4 * h64 * (h64 + 1) - 1) * k.nh(h);
    }
    s
}

pub fn sigma_luo_values(n_t: i64, n_c: i64, n_l: i64) -> i64 {
    -n_t - 7 * n_c + n_l
}

pub fn sigma_luo(k: &Counts) -> Result<i64> {
    if k.flavor != Flavor::Luo {
        return Err(Error::Mismatch("sigma_luo needs Luo-flavor counts".into()));
    }
    Ok(sigma_luo_values(
        k.white_count(RelatorId::T),
        k.white_count(RelatorId::C2Chain),
        k.white_count(RelatorId::Lantern),
    ))
}

/// Σ white exponent sums − Σ n_0(i) − 4 Σ h(2h+1) n_h = 0.
pub fn edge_identity_check(k: &Counts) -> bool {
    let white: i64 = k.white.iter().map(|(id, n)| id.exponent_sum() * n).sum();
    let n0 = k.n0_plus as i64 - k.n0_minus as i64;
    let hs: i64 = (1..=k.nh_plus.len().max(k.nh_minus.len()))
        .map(|h| {
            let h64 = h as i64;
            4 * h64 * (2 * h64 + 1) * k.nh(h)
        })
        .sum();
    white - n0 - hs == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luo_values() {
        assert_eq!(sigma_luo(&Counts::luo(3, 0, 0, 0, -1)).unwrap(), -1);
        assert_eq!(sigma_luo(&Counts::luo(3, 1, 0, 1, 0)).unwrap(), -8);
        assert_eq!(sigma_luo(&Counts::zero(3, Flavor::Luo)).unwrap(), 0);
        assert!(sigma_luo(&Counts::zero(3, Flavor::Wajnryb)).is_err());
    }

    #[test]
    fn lone_chain_vertex_breaks_identity() {
        let mut k = Counts::zero(3, Flavor::Wajnryb);
        assert!(edge_identity_check(&k));
        k.white.insert(RelatorId::C, 1);
        assert!(!edge_identity_check(&k));
        k.n0_plus = 10;
        assert!(edge_identity_check(&k));
    }
}
