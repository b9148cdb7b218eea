//! Finite group actions on L∞ algebras.

use crate::error::{Error, Result};
use crate::qlinalg::{GroupRepresentation, Matrix, SparseVec, Subspace};
use crate::report::CheckReport;

use super::algebra::SLInfinityAlgebra;
use super::check::check_filtration_law;
use super::filtration::{adapted_kernel, restrict_to_subspace};

/// An algebra with a linear action of a finite group on its carrier.
///
/// The action is not required to satisfy the group law at construction; use
/// [`GroupRepresentation::validate`] for that. This lets families of matrices
/// be tested for bracket compatibility on their own.
#[derive(Clone, Debug)]
pub struct GSLInfinityAlgebra {
    pub algebra: SLInfinityAlgebra,
    pub action: GroupRepresentation,
}

impl GSLInfinityAlgebra {
    pub fn new(algebra: SLInfinityAlgebra, action: GroupRepresentation) -> Result<Self> {
        if action.carrier().dim() != algebra.dim() || action.carrier().degrees() != algebra.carrier().degrees() {
            return Err(Error::input("the action and the algebra live on different carriers"));
        }
        let action = action.with_carrier(algebra.carrier().clone())?;
        Ok(GSLInfinityAlgebra { algebra, action })
    }

    pub fn trivial(algebra: SLInfinityAlgebra, group: crate::qlinalg::FiniteGroup) -> Self {
        let action = GroupRepresentation::trivial(group, algebra.carrier().clone());
        GSLInfinityAlgebra { algebra, action }
    }
}

/// `g·ℓ_n(x_1, …, x_n) = ℓ_n(g x_1, …, g x_n)` on every non-decreasing basis
/// tuple within the caps, and `g·F^p ⊆ F^p`.
pub fn check_equivariance(gl: &GSLInfinityAlgebra) -> CheckReport {
    let l = &gl.algebra;
    let rep = &gl.action;
    let group = rep.group();
    let mut cases = 0;
    for g in group.elements().skip(1) {
        for i in 0..l.dim() {
            cases += 1;
            let img = rep.apply(g, &SparseVec::unit(i));
            let low = img.support().find(|&j| l.weight(j) < l.weight(i));
            if let Some(j) = low {
                return CheckReport::fail(
                    "equivariance",
                    None,
                    vec![group.name(g).to_string(), l.label(i).to_string()],
                    format!("does not preserve the filtration: image has {} of lower weight", l.label(j)),
                    cases,
                );
            }
        }
    }
    let prune = check_filtration_law(l).passed();
    let max_w = l.max_weight();
    let images: Vec<Vec<SparseVec>> = group
        .elements()
        .map(|g| (0..l.dim()).map(|i| rep.apply(g, &SparseVec::unit(i))).collect())
        .collect();
    for n in 1..=l.arity_cap() {
        let tuples = l.multisets(n, |t| !prune || t.len() < 2 || t.iter().map(|&i| l.weight(i)).sum::<u32>() <= max_w);
        for t in tuples {
            if l.canonical(&t).is_none() || l.carrier().dim_in(l.output_degree(&t)) == 0 {
                continue;
            }
            let value = l.bracket(&t);
            for g in group.elements().skip(1) {
                cases += 1;
                let lhs = rep.apply(g, &value);
                let args: Vec<&SparseVec> = t.iter().map(|&i| &images[g][i]).collect();
                let rhs = l.eval(&args);
                if lhs != rhs {
                    let mut w = vec![group.name(g).to_string()];
                    w.extend(l.tuple_labels(&t));
                    return CheckReport::fail(
                        "equivariance",
                        Some(n),
                        w,
                        format!(
                            "g·ℓ = {} but ℓ(g·) = {}",
                            lhs.display_with(l.labels()),
                            rhs.display_with(l.labels())
                        ),
                        cases,
                    );
                }
            }
        }
    }
    CheckReport::pass("equivariance", cases)
}

/// Common fixed vectors of the action, degree by degree, as a basis adapted
/// to the weight filtration (each vector tagged with its weight).
pub fn invariant_basis(gl: &GSLInfinityAlgebra) -> Vec<(SparseVec, u32)> {
    let l = &gl.algebra;
    let rep = &gl.action;
    let mut out = Vec::new();
    for n in l.carrier().occupied_degrees() {
        let k = l.carrier().dim_in(n);
        let mut stacked = Matrix::zeros(0, k);
        for g in rep.group().elements().skip(1) {
            stacked = stacked.vstack(&rep.block(g, n).sub(&Matrix::identity(k)));
        }
        out.extend(adapted_kernel(l, n, &stacked));
    }
    out
}

/// The subalgebra `L^G` with inherited filtration `F^p(L^G) = F^p L ∩ L^G`.
/// The closure of the invariant span under all brackets is verified.
pub fn fixed_subalgebra(gl: &GSLInfinityAlgebra) -> Result<SLInfinityAlgebra> {
    fixed_subalgebra_with_span(gl).map(|(l, _)| l)
}

/// Like [`fixed_subalgebra`], also returning the invariant subspace of `L`.
pub fn fixed_subalgebra_with_span(gl: &GSLInfinityAlgebra) -> Result<(SLInfinityAlgebra, Subspace)> {
    let basis = invariant_basis(gl);
    let (vectors, weights): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
    restrict_to_subspace(&gl.algebra, vectors, weights, None).map_err(|e| match e {
        Error::Structural(m) => Error::structural(format!("invariants are not a subalgebra ({m}); the action is broken")),
        other => other,
    })
}
