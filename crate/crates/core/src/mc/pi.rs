use std::fmt;

use serde::Serialize;

use crate::cdga::{connectivity_guard, tensor_model_equivariant, CDGAModel};
use crate::error::{Error, Result};
use crate::liealg::{
    as_shifted, check_equivariance, fixed_subalgebra, positive_truncation, GSLInfinityAlgebra, SLInfinityAlgebra,
};
use crate::qlinalg::{induced_on_homology, GroupRepresentation, Matrix, SparseVec};

use super::bch::bch_with;
use super::element::{twist, MCElement};

/// One nonzero homotopy group `π_n ⊗ ℚ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiGroup {
    pub degree: i32,
    pub dim: usize,
    /// Representative cycles, rendered in the carrier labels.
    pub representatives: Vec<String>,
}

/// The Malcev group structure on `π_1`, on the basis of representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1 {
    /// `None` when the lower central series does not reach zero.
    pub nilpotency_class: Option<usize>,
    pub basis: Vec<String>,
    /// `products[i][j]` is `bch(basis[i], basis[j])`.
    pub products: Vec<Vec<String>>,
}

/// Rational homotopy groups of `MC(L)` at the zero base point, degrees
/// `1..=max_degree`. Only nonzero groups are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiReport {
    pub max_degree: i32,
    pub groups: Vec<PiGroup>,
    pub pi1: Option<Pi1>,
    pub caveats: Vec<String>,
}

impl PiReport {
    pub fn dim(&self, n: i32) -> usize {
        self.groups.iter().find(|g| g.degree == n).map_or(0, |g| g.dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        (1..=self.max_degree).map(|n| self.dim(n)).collect()
    }

    pub fn is_contractible(&self) -> bool {
        self.groups.is_empty()
    }
}

impl fmt::Display for PiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            writeln!(f, "all rational homotopy groups vanish through degree {}", self.max_degree)?;
        } else {
            let width = self.groups.iter().map(|g| g.degree.to_string().len()).max().unwrap_or(1).max(6);
            writeln!(f, "{:<width$}  {:>3}  representatives", "degree", "dim")?;
            for g in &self.groups {
                writeln!(f, "{:<width$}  {:>3}  {}", g.degree, g.dim, g.representatives.join(", "))?;
            }
        }
        if let Some(p) = &self.pi1 {
            match p.nilpotency_class {
                Some(c) => writeln!(f, "π_1 is nilpotent of class {c}")?,
                None => writeln!(f, "π_1 is not nilpotent")?,
            }
            for (i, row) in p.products.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    writeln!(f, "  ({}) * ({}) = {v}", p.basis[i], p.basis[j])?;
                }
            }
        }
        for c in &self.caveats {
            writeln!(f, "note: {c}")?;
        }
        Ok(())
    }
}

fn require_positive(l: &SLInfinityAlgebra) -> Result<()> {
    if let Some(i) = (0..l.dim()).find(|&i| l.degree(i) < 1) {
        return Err(Error::Hypothesis(format!(
            "homotopy groups are computed for positively graded algebras; {} has degree {}",
            l.label(i),
            l.degree(i)
        )));
    }
    Ok(())
}

/// `π_n(MC(L)) ≅ H_n(L)` at the zero base point. dg Lie inputs are suspended,
/// so `π_n = H_{n−1}` of the dg Lie carrier.
pub fn homotopy_groups(l: &SLInfinityAlgebra, max_degree: i32) -> Result<PiReport> {
    let l = as_shifted(l)?;
    require_positive(&l)?;
    let cx = l.chain_complex()?;
    let mut groups = Vec::new();
    let mut h1 = None;
    for n in 1..=max_degree {
        let h = cx.homology(n);
        if n == 1 {
            h1 = Some(h.clone());
        }
        if h.dim() > 0 {
            groups.push(PiGroup {
                degree: n,
                dim: h.dim(),
                representatives: h.representatives.iter().map(|z| z.display_with(l.labels()).to_string()).collect(),
            });
        }
    }
    let mut caveats = Vec::new();
    if let Some(c) = l.complete_through() {
        let last_reliable = if l.has_differential() { c - 1 } else { c };
        if max_degree > last_reliable {
            caveats.push(format!(
                "the algebra is a truncation; degrees above {last_reliable} may be incomplete"
            ));
        }
    }
    let pi1 = match h1 {
        Some(h) if h.dim() > 0 => Some(pi1_structure(&l, &h)?),
        _ => None,
    };
    Ok(PiReport { max_degree, groups, pi1, caveats })
}

fn pi1_structure(l: &SLInfinityAlgebra, h: &crate::qlinalg::Homology) -> Result<Pi1> {
    let k = h.dim();
    // Bracket on H_1 in class coordinates.
    let embed = |c: &SparseVec| {
        let mut v = SparseVec::new();
        for (i, x) in c.iter() {
            v.add_scaled(&h.representatives[i], x);
        }
        v
    };
    let class = |v: &SparseVec| -> Result<SparseVec> { Ok(SparseVec::from_dense(&h.class_of(v)?)) };
    let mut table = vec![vec![SparseVec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            table[i][j] = class(&l.eval(&[&h.representatives[i], &h.representatives[j]]))?;
        }
    }
    let bracket = |a: &SparseVec, b: &SparseVec| {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&table[i][j], &(x * y));
            }
        }
        out
    };
    // Lower central series.
    let mut gamma: Vec<SparseVec> = (0..k).map(SparseVec::unit).collect();
    let mut class_ = None;
    for c in 1..=k + 1 {
        if gamma.is_empty() {
            class_ = Some(c - 1);
            break;
        }
        let mut next = Vec::new();
        for g in &gamma {
            for i in 0..k {
                let v = bracket(&SparseVec::unit(i), g);
                if !v.is_zero() {
                    next.push(v);
                }
            }
        }
        let m = Matrix::from_columns(k, &next);
        gamma = m.column_space();
    }
    let labels: Vec<String> = h.representatives.iter().map(|z| z.display_with(l.labels()).to_string()).collect();
    let mut products = Vec::new();
    if let Some(c) = class_ {
        for i in 0..k {
            let mut row = Vec::new();
            for j in 0..k {
                let z = bch_with(&bracket, &SparseVec::unit(i), &SparseVec::unit(j), c.max(1))?;
                row.push(embed(&z).display_with(l.labels()).to_string());
            }
            products.push(row);
        }
    }
    Ok(Pi1 { nilpotency_class: class_, basis: labels, products })
}

/// Homotopy groups at a Maurer-Cartan base point: twist, discard
/// non-positive degrees, take homology.
pub fn homotopy_groups_at(tau: &MCElement, max_degree: i32) -> Result<PiReport> {
    let twisted = twist(tau.algebra(), tau)?;
    let (truncated, _, notice) = positive_truncation(&twisted)?;
    let mut report = homotopy_groups(&truncated, max_degree)?;
    report.caveats.extend(notice);
    Ok(report)
}

/// `π_*(MC(L)^{hG}) ≅ H_*(L^G)`, checked against `H_*(L)^G` computed through
/// the induced action on homology. A mismatch is an error.
pub fn homotopy_fixed_pi(gl: &GSLInfinityAlgebra, max_degree: i32) -> Result<PiReport> {
    let l = as_shifted(&gl.algebra)?;
    require_positive(&l)?;
    let rep = gl.action.with_carrier(l.carrier().clone())?;
    let gl = GSLInfinityAlgebra { algebra: l, action: rep };
    let eq = check_equivariance(&gl);
    if !eq.passed() {
        return Err(Error::Hypothesis(format!("the action is not by sL∞ automorphisms: {eq}")));
    }
    let mut caveats = Vec::new();
    if let Some(msg) = gl.action.law_violation() {
        caveats.push(format!(
            "the matrices do not satisfy the group law ({msg}); invariants are the vectors fixed by every matrix"
        ));
    }
    let fixed = fixed_subalgebra(&gl)?;
    let mut report = homotopy_groups(&fixed, max_degree)?;
    let cx = gl.algebra.chain_complex()?;
    for n in 1..=max_degree {
        let other = invariants_of_homology(&cx, &gl.action, n)?;
        if other != report.dim(n) {
            return Err(Error::structural(format!(
                "dim H_{n}(L^G) = {} but dim H_{n}(L)^G = {other}",
                report.dim(n)
            )));
        }
    }
    caveats.extend(report.caveats);
    report.caveats = caveats;
    Ok(report)
}

fn invariants_of_homology(cx: &crate::qlinalg::ChainComplex, rep: &GroupRepresentation, n: i32) -> Result<usize> {
    let hdim = cx.homology(n).dim();
    let mut stacked = Matrix::zeros(0, hdim);
    for g in rep.group().elements().skip(1) {
        stacked = stacked.vstack(&induced_on_homology(cx, rep, g, n)?.sub(&Matrix::identity(hdim)));
    }
    Ok(if stacked.rows() == 0 { hdim } else { stacked.kernel().len() })
}

/// `π_*` of the homotopy fixed points of `Map(X, MC(L))`, modeled by
/// `(A ⊗ L)^G`. Refused unless the top degree of `A` is below the
/// connectivity of `L`. An action-free `A` is given the trivial action.
pub fn mapping_space_pi(a: &CDGAModel, gl: &GSLInfinityAlgebra, max_degree: i32) -> Result<PiReport> {
    if !connectivity_guard(a, &gl.algebra) {
        return Err(Error::Hypothesis(
            "the CDGA must vanish in degrees at or above the connectivity of L".into(),
        ));
    }
    let a = match a.action() {
        Some(_) => a.clone(),
        None => a.clone().with_action(Some(GroupRepresentation::trivial(gl.action.group().clone(), a.carrier().clone())))?,
    };
    let t = tensor_model_equivariant(&a, gl, max_degree + 1)?;
    let eq = t.equivariant().expect("both factors carry actions");
    let mut report = homotopy_fixed_pi(&eq, max_degree)?;
    report.caveats.extend(t.notice);
    Ok(report)
}
