//! Filtrations, quotients and subalgebras.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qlinalg::{GradedModule, Matrix, SparseVec, Subspace};

use super::algebra::SLInfinityAlgebra;

/// Basis of `F^p L` (elements of weight ≥ p) in degree `n`, as unit vectors.
pub fn lcs_filtration(l: &SLInfinityAlgebra, p: u32, n: i32) -> Vec<SparseVec> {
    l.carrier().indices_in(n).into_iter().filter(|&i| l.weight(i) >= p).map(SparseVec::unit).collect()
}

/// Total dimension of `F^p L`.
pub fn lcs_dim(l: &SLInfinityAlgebra, p: u32) -> usize {
    l.weights().iter().filter(|&&w| w >= p).count()
}

/// `L / F^p L`: the basis elements of weight < p with brackets composed with
/// the projection.
pub fn nilpotent_quotient(l: &SLInfinityAlgebra, p: u32) -> Result<SLInfinityAlgebra> {
    if p < 2 {
        return Err(Error::input("nilpotent quotients are taken for p ≥ 2"));
    }
    let keep: Vec<usize> = (0..l.dim()).filter(|&i| l.weight(i) < p).collect();
    let new_index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let carrier = GradedModule::new(keep.iter().map(|&i| (l.label(i).to_string(), l.degree(i))).collect())?;
    let weights = keep.iter().map(|&i| l.weight(i)).collect();
    let entries = l
        .entries()
        .filter(|(key, _)| key.iter().all(|i| new_index.contains_key(i)))
        .map(|(key, value)| {
            let k = key.iter().map(|i| new_index[i]).collect();
            (k, value.reindexed(|j| new_index.get(&j).copied()))
        })
        .collect();
    let exact = l.weight_cap().is_none_or(|c| p <= c + 1);
    let complete = if exact { l.degree_cap() } else { l.complete_through() };
    let cap = l.weight_cap().map_or(p - 1, |c| c.min(p - 1));
    Ok(SLInfinityAlgebra::new(carrier, weights, l.convention(), entries, l.arity_cap())?
        .with_degree_cap(l.degree_cap())
        .with_weight_cap(Some(cap))
        .with_complete_through(complete))
}

/// A basis of `ker(constraint)` inside degree `n`, adapted to the weight
/// filtration: vectors are chosen from `F^{max}` downwards, and each carries
/// the largest `p` with the vector in `F^p`. `constraint` acts on the local
/// coordinates of degree `n`.
pub fn adapted_kernel(l: &SLInfinityAlgebra, n: i32, constraint: &Matrix) -> Vec<(SparseVec, u32)> {
    let idx = l.carrier().indices_in(n);
    let mut chosen: Vec<SparseVec> = Vec::new();
    let mut out = Vec::new();
    let mut ws: Vec<u32> = idx.iter().map(|&i| l.weight(i)).collect();
    ws.sort_unstable();
    ws.dedup();
    for &p in ws.iter().rev() {
        let allowed: Vec<usize> = (0..idx.len()).filter(|&k| l.weight(idx[k]) >= p).collect();
        let kernel: Vec<SparseVec> = if constraint.rows() == 0 {
            (0..allowed.len()).map(SparseVec::unit).collect()
        } else {
            let sub = Matrix::from_rows(
                (0..constraint.rows())
                    .map(|r| allowed.iter().map(|&k| constraint.get(r, k).clone()).collect())
                    .collect(),
            );
            sub.kernel()
        };
        for v in kernel {
            let v = v.reindexed(|j| Some(allowed[j]));
            let mut trial = chosen.clone();
            trial.push(v.clone());
            if crate::qlinalg::rank_of(idx.len(), &trial) > chosen.len() {
                chosen.push(v.clone());
                out.push((l.carrier().global(&v, n), p));
            }
        }
    }
    out
}

/// The subalgebra spanned by `vectors` (homogeneous, independent) with the
/// given weights and labels. Fails if some bracket of basis vectors leaves the
/// span.
pub fn restrict_to_subspace(
    l: &SLInfinityAlgebra,
    vectors: Vec<SparseVec>,
    weights: Vec<u32>,
    labels: Option<Vec<String>>,
) -> Result<(SLInfinityAlgebra, Subspace)> {
    let sub = Subspace::new(l.carrier(), vectors)?;
    let carrier = match labels {
        Some(ls) => GradedModule::new(
            ls.into_iter().zip(sub.vectors().iter().map(|v| l.carrier().degree_of(v).unwrap())).collect(),
        )?,
        None => sub.as_module(),
    };
    let prune = super::check::check_filtration_law(l).passed();
    let ambient_max = l.max_weight();
    let shell = SLInfinityAlgebra::new(carrier.clone(), weights.clone(), l.convention(), Vec::new(), l.arity_cap())?;
    let mut entries = Vec::new();
    for n in 1..=l.arity_cap() {
        let tuples = shell.multisets(n, |t| {
            !prune || t.len() < 2 || t.iter().map(|&i| weights[i]).sum::<u32>() <= ambient_max
        });
        for t in tuples {
            if shell.canonical(&t).is_none() || l.carrier().dim_in(shell.output_degree(&t)) == 0 {
                continue;
            }
            let args: Vec<&SparseVec> = t.iter().map(|&i| &sub.vectors()[i]).collect();
            let value = l.eval(&args);
            if value.is_zero() {
                continue;
            }
            let coords = sub.coordinates(&value).ok_or_else(|| {
                Error::structural(format!(
                    "subspace is not closed: ℓ_{n}({}) = {} leaves it",
                    shell.tuple_labels(&t).join(", "),
                    value.display_with(l.labels())
                ))
            })?;
            entries.push((t, coords));
        }
    }
    let alg = SLInfinityAlgebra::new(carrier, weights, l.convention(), entries, l.arity_cap())?
        .with_degree_cap(l.degree_cap())
        .with_weight_cap(l.weight_cap())
        .with_complete_through(l.complete_through());
    Ok((alg, sub))
}

/// `Z_1 ⊕ L_{≥2}`: the largest positively graded subalgebra on which ℓ_1 is
/// still a differential with values in the subalgebra. Identity (and no
/// notice) when `L` is already concentrated in degrees ≥ 1 with nothing in
/// degree 0.
pub fn positive_truncation(l: &SLInfinityAlgebra) -> Result<(SLInfinityAlgebra, Option<Subspace>, Option<String>)> {
    if l.carrier().degrees().iter().all(|&d| d >= 1) {
        return Ok((l.clone(), None, None));
    }
    let d1 = l.differential().block(1);
    let mut vectors = Vec::new();
    let mut weights = Vec::new();
    let mut labels = Vec::new();
    for (v, w) in adapted_kernel(l, 1, &d1) {
        labels.push(single_label(l, &v));
        vectors.push(v);
        weights.push(w);
    }
    let dropped_cycles = l.carrier().dim_in(1) - vectors.len();
    for i in 0..l.dim() {
        if l.degree(i) >= 2 {
            vectors.push(SparseVec::unit(i));
            weights.push(l.weight(i));
            labels.push(l.label(i).to_string());
        }
    }
    let dropped = (0..l.dim()).filter(|&i| l.degree(i) <= 0).count();
    let notice = format!(
        "truncated to positive degrees: dropped {dropped} basis elements of degree ≤ 0 and {dropped_cycles} non-cycles in degree 1"
    );
    let (alg, sub) = restrict_to_subspace(l, vectors, weights, Some(labels))?;
    Ok((alg, Some(sub), Some(notice)))
}

/// Label of a basis-like vector: the ambient label for a unit vector, the
/// rendered combination otherwise.
pub(crate) fn single_label(l: &SLInfinityAlgebra, v: &SparseVec) -> String {
    v.display_with(l.labels()).to_string()
}
