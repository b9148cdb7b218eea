use crate::error::{Error, Result};
use crate::liealg::{as_shifted, SLInfinityAlgebra};
use crate::qlinalg::{factorial, SparseVec};

/// `Σ_{k≥1} ℓ_k(z, …, z) / k!` for `z` of degree 0 (shifted grading; a dg Lie
/// algebra is suspended first, so its MC elements sit in degree −1).
pub fn curvature(l: &SLInfinityAlgebra, z: &SparseVec) -> Result<SparseVec> {
    let l = as_shifted(l)?;
    check_degree_zero(&l, z)?;
    let mut out = SparseVec::new();
    for k in 1..=l.arity_cap() {
        let args = vec![z; k];
        out.add_scaled(&l.eval(&args), &factorial(k).recip());
    }
    Ok(out)
}

fn check_degree_zero(l: &SLInfinityAlgebra, z: &SparseVec) -> Result<()> {
    for i in z.support() {
        if i >= l.dim() {
            return Err(Error::input(format!("index {i} out of range")));
        }
        if l.degree(i) != 0 {
            return Err(Error::input(format!(
                "Maurer-Cartan elements have degree 0, but {} has degree {}",
                l.label(i),
                l.degree(i)
            )));
        }
    }
    Ok(())
}

/// A verified Maurer-Cartan element of a shifted algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCElement {
    algebra: SLInfinityAlgebra,
    vector: SparseVec,
}

impl MCElement {
    pub fn new(l: &SLInfinityAlgebra, z: SparseVec) -> Result<Self> {
        let l = as_shifted(l)?;
        let c = curvature(&l, &z)?;
        if !c.is_zero() {
            return Err(Error::input(format!(
                "not a Maurer-Cartan element: curvature is {}",
                c.display_with(l.labels())
            )));
        }
        Ok(MCElement { algebra: l, vector: z })
    }

    /// The base point.
    pub fn zero(l: &SLInfinityAlgebra) -> Result<Self> {
        MCElement::new(l, SparseVec::new())
    }

    pub fn algebra(&self) -> &SLInfinityAlgebra {
        &self.algebra
    }

    pub fn vector(&self) -> &SparseVec {
        &self.vector
    }
}

/// `ℓ_k^τ(x_1, …, x_k) = Σ_{j≥0} ℓ_{k+j}(τ, …, τ, x_1, …, x_k) / j!`.
///
/// The result is not truncated; [`crate::mc::homotopy_groups_at`] applies
/// the positive truncation before taking homology.
pub fn twist(l: &SLInfinityAlgebra, tau: &MCElement) -> Result<SLInfinityAlgebra> {
    let l = as_shifted(l)?;
    if tau.algebra != l {
        return Err(Error::input("the Maurer-Cartan element belongs to a different algebra"));
    }
    let t = &tau.vector;
    if t.is_zero() {
        return Ok(l);
    }
    let cap = l.arity_cap();
    let units: Vec<SparseVec> = (0..l.dim()).map(SparseVec::unit).collect();
    let mut entries = Vec::new();
    for k in 1..=cap {
        for key in l.multisets(k, |_| true) {
            if l.canonical(&key).is_none() {
                continue;
            }
            let mut value = SparseVec::new();
            for j in 0..=cap - k {
                let mut args: Vec<&SparseVec> = vec![t; j];
                args.extend(key.iter().map(|&i| &units[i]));
                value.add_scaled(&l.eval(&args), &factorial(j).recip());
            }
            if !value.is_zero() {
                entries.push((key, value));
            }
        }
    }
    let twisted = SLInfinityAlgebra::new(l.carrier().clone(), l.weights().to_vec(), l.convention(), entries, cap)?
        .with_degree_cap(l.degree_cap())
        .with_weight_cap(l.weight_cap())
        .with_complete_through(l.complete_through());
    let d = twisted.differential();
    for i in 0..twisted.dim() {
        let dd = d.apply(&d.apply(&SparseVec::unit(i)));
        if !dd.is_zero() {
            return Err(Error::structural(format!("the twisted ℓ_1 squares to a nonzero map on {}", l.label(i))));
        }
    }
    Ok(twisted)
}
