//! Stable classification: two fibrations become isomorphic after enough
//! fiber sums with a fixed stabilizer exactly when their black-vertex counts
//! and signatures agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chart::{sigma_chart, sigma_luo, validate, Chart, Counts, Flavor};
use crate::error::{Error, Result};
use crate::signature::{tuple_from_factorization, Factorization, InvariantTuple};

#[derive(Clone, Debug)]
pub enum Presentation {
    Chart(Chart),
    Factorization(Factorization),
}

impl Presentation {
    pub fn g(&self) -> usize {
        match self {
            Presentation::Chart(c) => c.g,
            Presentation::Factorization(f) => f.g(),
        }
    }

    pub fn base_genus(&self) -> usize {
        match self {
            Presentation::Chart(c) => c.base_genus,
            Presentation::Factorization(f) => f.base_genus(),
        }
    }

    /// Edge count for charts; letter count stands in for factorizations.
    pub fn size(&self) -> usize {
        match self {
            Presentation::Chart(c) => c.drawn_edge_count(),
            Presentation::Factorization(f) => f.len(),
        }
    }
}

impl From<Chart> for Presentation {
    fn from(c: Chart) -> Self {
        Presentation::Chart(c)
    }
}

impl From<Factorization> for Presentation {
    fn from(f: Factorization) -> Self {
        Presentation::Factorization(f)
    }
}

pub fn invariants_of(p: &Presentation) -> Result<InvariantTuple> {
    match p {
        Presentation::Chart(c) => {
            validate(c).into_result()?;
            let counts = Counts::of(c);
            let sigma = match c.flavor {
                Flavor::Wajnryb => sigma_chart(c)?,
                Flavor::Luo => sigma_luo(&counts)?,
            };
            Ok(counts.tuple(sigma))
        }
        Presentation::Factorization(f) => tuple_from_factorization(f),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Stabilize by the universal fibration.
    #[default]
    Universal,
    /// Stabilize by a fibration with exactly two singular fibers.
    Elementary,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "universal" => Ok(Mode::Universal),
            "elementary" => Ok(Mode::Elementary),
            _ => Err(Error::Param(format!("unknown mode '{s}', expected universal or elementary"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// Nonseparating counts n_0^±.
    #[serde(rename = "(i)")]
    NonSeparating,
    /// Separating counts n_h^±.
    #[serde(rename = "(ii)")]
    Separating,
    #[serde(rename = "(iii)")]
    Signature,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::NonSeparating => "(i)",
            Condition::Separating => "(ii)",
            Condition::Signature => "(iii)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub equivalent: bool,
    pub failing_conditions: Vec<Condition>,
    /// Number of stabilizing summands that suffices; present when equivalent.
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub mode: Mode,
    pub left: InvariantTuple,
    pub right: InvariantTuple,
}

pub fn stabilization_bound(p: &Presentation, q: &Presentation) -> usize {
    p.size().max(q.size()) + 1
}

/// The conditions on which two tuples differ.
pub fn compare_tuples(a: &InvariantTuple, b: &InvariantTuple) -> Vec<Condition> {
    let mut out = Vec::new();
    if (a.n0_plus, a.n0_minus) != (b.n0_plus, b.n0_minus) {
        out.push(Condition::NonSeparating);
    }
    let padded = |v: &[u64], n: usize| {
        let mut v = v.to_vec();
        v.resize(n, 0);
        v
    };
    let n = a.nh_plus.len().max(b.nh_plus.len()).max(a.nh_minus.len()).max(b.nh_minus.len());
    if padded(&a.nh_plus, n) != padded(&b.nh_plus, n) || padded(&a.nh_minus, n) != padded(&b.nh_minus, n) {
        out.push(Condition::Separating);
    }
    if a.sigma != b.sigma {
        out.push(Condition::Signature);
    }
    out
}

pub fn stable_equivalent(p: &Presentation, q: &Presentation, mode: Mode) -> Result<Verdict> {
    if p.g() != q.g() {
        return Err(Error::Mismatch(format!("fiber genus {} against {}", p.g(), q.g())));
    }
    if p.g() < 3 {
        return Err(Error::Param(format!("stable classification needs g >= 3, got {}", p.g())));
    }
    if p.base_genus() != q.base_genus() {
        return Err(Error::Mismatch(format!("base genus {} against {}", p.base_genus(), q.base_genus())));
    }
    let (left, right) = (invariants_of(p)?, invariants_of(q)?);
    let failing_conditions = compare_tuples(&left, &right);
    let equivalent = failing_conditions.is_empty();
    Ok(Verdict {
        equivalent,
        failing_conditions,
        n: equivalent.then(|| stabilization_bound(p, q)),
        mode,
        left,
        right,
    })
}
