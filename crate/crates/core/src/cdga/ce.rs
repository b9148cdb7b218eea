//! Chevalley-Eilenberg cochains `(ΛV, d)` of a finite-type positively graded
//! sL∞ algebra, truncated by word length and degree.
//!
//! `V` has one generator `x*` of degree `|x|` for each basis element `x` of
//! `L`. The differential on generators is
//!
//! ```text
//! d(x_m*) = −(−1)^{|x_m|} Σ_t (−1)^{e(t)} / t! · c^m_t · x_t*
//! ```
//!
//! summed over non-decreasing tuples `t`, where `c^m_t` is the coefficient of
//! `x_m` in `ℓ(t)`, `e(t) = Σ_{p<q} |x_{t_p}||x_{t_q}|`, `t!` is the product of
//! the factorials of the multiplicities and `x_t*` the sorted monomial. These
//! signs make `Σ x_i ⊗ x_i*` a Maurer-Cartan element of `L ⊗ ΛV`, which is
//! equivalent to `d² = 0` given the Jacobi identities.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::liealg::{as_shifted, SLInfinityAlgebra};
use crate::qlinalg::{factorial, sign, GradedModule, GroupRepresentation, Matrix, Scalar, SparseVec};

use super::model::CDGAModel;

/// Monomial arithmetic in the free graded commutative algebra on generators
/// of the given degrees, truncated by word length and degree.
struct Monomials {
    degrees: Vec<i32>,
    list: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl Monomials {
    fn build(degrees: Vec<i32>, wordlength: usize, degree_cap: i32) -> Self {
        let mut list: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..wordlength {
            let mut next = Vec::new();
            for m in &frontier {
                let start = m.last().copied().unwrap_or(0);
                for g in start..degrees.len() {
                    if m.last() == Some(&g) && degrees[g] % 2 != 0 {
                        continue;
                    }
                    let deg: i32 = m.iter().map(|&i| degrees[i]).sum::<i32>() + degrees[g];
                    if deg > degree_cap {
                        continue;
                    }
                    let mut w = m.clone();
                    w.push(g);
                    next.push(w);
                }
            }
            list.extend(next.iter().cloned());
            frontier = next;
        }
        let index = list.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Monomials { degrees, list, index }
    }

    fn degree(&self, m: &[usize]) -> i32 {
        m.iter().map(|&i| self.degrees[i]).sum()
    }

    /// Sorts a word of generators with Koszul signs; `None` if it vanishes
    /// (repeated odd generator) or falls outside the truncation.
    fn normalize(&self, word: &[usize]) -> Option<(usize, Scalar)> {
        let mut v = word.to_vec();
        let mut e: i64 = 0;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                e += (self.degrees[v[j - 1]] as i64) * (self.degrees[v[j]] as i64);
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1] && self.degrees[w[0]] % 2 != 0) {
            return None;
        }
        self.index.get(&v).map(|&i| (i, sign(e)))
    }

    fn mul(&self, a: usize, b: usize) -> SparseVec {
        let mut w = self.list[a].clone();
        w.extend_from_slice(&self.list[b]);
        match self.normalize(&w) {
            Some((i, s)) => SparseVec::unit(i).scaled(&s),
            None => SparseVec::new(),
        }
    }

    fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&self.mul(i, j), &(x * y));
            }
        }
        out
    }

    fn label(&self, m: &[usize], names: &[String]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("·")
    }
}

/// The cochain algebra of `L` with word length ≤ `wordlength` and degree ≤
/// `degree_cap`. With an action on `L`, pass it to get the contragredient
/// action `g·x_i* = Σ_j (ρ(g⁻¹))_{ij} x_j*` extended multiplicatively.
pub fn ce_cochains(
    l: &SLInfinityAlgebra,
    action: Option<&GroupRepresentation>,
    wordlength: usize,
    degree_cap: i32,
) -> Result<CDGAModel> {
    let l = as_shifted(l)?;
    if let Some(i) = (0..l.dim()).find(|&i| l.degree(i) < 1) {
        return Err(Error::Hypothesis(format!(
            "cochains need a positively graded algebra; {} has degree {}",
            l.label(i),
            l.degree(i)
        )));
    }
    let degrees: Vec<i32> = l.carrier().degrees().to_vec();
    let names: Vec<String> = (0..l.dim()).map(|i| format!("{}*", l.label(i))).collect();
    let mono = Monomials::build(degrees.clone(), wordlength, degree_cap);

    // d on generators.
    let mut d_gen: Vec<SparseVec> = vec![SparseVec::new(); l.dim()];
    for n in 1..=l.arity_cap() {
        for t in l.multisets(n, |_| true) {
            let value = l.bracket(&t);
            if value.is_zero() {
                continue;
            }
            let Some((mono_ix, s)) = mono.normalize(&t) else { continue };
            let mut e: i64 = 0;
            for p in 0..t.len() {
                for q in p + 1..t.len() {
                    e += (degrees[t[p]] as i64) * (degrees[t[q]] as i64);
                }
            }
            let mut mult = Scalar::from_integer(1.into());
            let mut run = 1;
            for p in 1..=t.len() {
                if p < t.len() && t[p] == t[p - 1] {
                    run += 1;
                } else {
                    mult *= factorial(run);
                    run = 1;
                }
            }
            let coeff = sign(e) * s / mult;
            for (m, c) in value.iter() {
                let pre = -sign(degrees[m] as i64);
                d_gen[m].add_term(mono_ix, pre * &coeff * c);
            }
        }
    }

    // Extend as a derivation to all monomials.
    let mut d_all = Vec::with_capacity(mono.list.len());
    for m in &mono.list {
        let mut out = SparseVec::new();
        let mut pre_deg: i64 = 0;
        for p in 0..m.len() {
            let left = mono.normalize(&m[..p]).map(|(i, s)| SparseVec::unit(i).scaled(&s)).unwrap_or_default();
            let right = mono.normalize(&m[p + 1..]).map(|(i, s)| SparseVec::unit(i).scaled(&s)).unwrap_or_default();
            let term = mono.mul_vec(&mono.mul_vec(&left, &d_gen[m[p]]), &right);
            out.add_scaled(&term, &sign(pre_deg));
            pre_deg += degrees[m[p]] as i64;
        }
        d_all.push(out);
    }

    let carrier = GradedModule::new(mono.list.iter().map(|m| (mono.label(m, &names), mono.degree(m))).collect())?;
    let mut products = Vec::new();
    for i in 1..mono.list.len() {
        for j in i..mono.list.len() {
            let v = mono.mul(i, j);
            if !v.is_zero() {
                products.push(((i, j), v));
            }
        }
    }

    let ce_action = match action {
        None => None,
        Some(rep) => {
            let group = rep.group();
            let mut mats = Vec::with_capacity(group.order());
            for g in group.elements() {
                let inv = rep.matrix(group.inverse(g));
                let gen_images: Vec<SparseVec> = (0..l.dim())
                    .map(|i| {
                        (0..l.dim())
                            .filter_map(|j| {
                                mono.normalize(&[j]).map(|(ix, _)| (ix, inv.get(i, j).clone()))
                            })
                            .collect()
                    })
                    .collect();
                let cols: Vec<SparseVec> = mono
                    .list
                    .iter()
                    .map(|m| {
                        let mut acc = SparseVec::unit(0);
                        for &i in m {
                            acc = mono.mul_vec(&acc, &gen_images[i]);
                        }
                        acc
                    })
                    .collect();
                mats.push(Matrix::from_columns(mono.list.len(), &cols));
            }
            Some(GroupRepresentation::new_unchecked(group.clone(), carrier.clone(), mats)?)
        }
    };

    let model = CDGAModel::new(carrier, 0, products, d_all, ce_action)?;
    for i in 0..model.dim() {
        let dd = model.d(model.differential_of(i));
        if !dd.is_zero() {
            return Err(Error::structural(format!(
                "d² ≠ 0 on {} (the Jacobi identities fail)",
                model.carrier().label(i)
            )));
        }
    }
    Ok(model)
}
