//! The sL∞ algebra `L ⊗ A`.
//!
//! Grading: `|x ⊗ α| = |x| − |α|` (homological minus cohomological). Labels
//! put the algebra factor first, as in `x⊗[a,b]`; with `A = ℚ` the labels of
//! `L` are kept. Brackets:
//!
//! ```text
//! ℓ_1(x⊗α) = ℓ_1(x)⊗α + (−1)^{|x|} x⊗dα
//! ℓ_k(x_1⊗α_1, …, x_k⊗α_k) = (−1)^{Σ_{i>j} |x_i||α_j|} ℓ_k(x_1, …, x_k) ⊗ α_1⋯α_k
//! ```
//!
//! The carrier is cut at `max_degree` and then truncated to positive degrees
//! as `Z_1 ⊕ (L⊗A)_{≥2}`.

use crate::error::{Error, Result};
use crate::liealg::{
    as_shifted, check_filtration_law, positive_truncation, Convention, GSLInfinityAlgebra, SLInfinityAlgebra,
};
use crate::qlinalg::{sign, GradedModule, GroupRepresentation, Matrix, Scalar, SparseVec};

use super::model::CDGAModel;

/// Output of [`tensor_model`].
#[derive(Clone, Debug)]
pub struct TensorModel {
    pub algebra: SLInfinityAlgebra,
    /// Diagonal action, when both factors carry one.
    pub action: Option<GroupRepresentation>,
    /// Set when elements of non-positive degree had to be discarded.
    pub notice: Option<String>,
}

impl TensorModel {
    pub fn equivariant(&self) -> Option<GSLInfinityAlgebra> {
        self.action.as_ref().map(|a| GSLInfinityAlgebra { algebra: self.algebra.clone(), action: a.clone() })
    }
}

/// True iff the top degree of `A` is below the connectivity of `L` (the least
/// degree with `L_n ≠ 0`, shifted grading).
pub fn connectivity_guard(a: &CDGAModel, l: &SLInfinityAlgebra) -> bool {
    let shift = if l.convention() == Convention::DgLie { 1 } else { 0 };
    match l.carrier().degrees().iter().min() {
        None => true,
        Some(&c) => a.top_degree() < c + shift,
    }
}

/// `L ⊗ A` in degrees `1..=max_degree`.
pub fn tensor_model(a: &CDGAModel, l: &SLInfinityAlgebra, max_degree: i32) -> Result<TensorModel> {
    build(a, l, None, max_degree)
}

/// `L ⊗ A` with the diagonal action `g(x⊗α) = gx ⊗ gα`.
pub fn tensor_model_equivariant(a: &CDGAModel, gl: &GSLInfinityAlgebra, max_degree: i32) -> Result<TensorModel> {
    build(a, &gl.algebra, Some(&gl.action), max_degree)
}

fn build(a: &CDGAModel, l: &SLInfinityAlgebra, l_action: Option<&GroupRepresentation>, hi: i32) -> Result<TensorModel> {
    if hi < 1 {
        return Err(Error::input("max_degree must be at least 1"));
    }
    let l = as_shifted(l)?;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for alpha in 0..a.dim() {
        for x in 0..l.dim() {
            let d = l.degree(x) - a.degree(alpha);
            if (0..=hi).contains(&d) {
                pairs.push((alpha, x));
            }
        }
    }
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p);
    let unit_only = a.dim() == 1;
    let label = |&(alpha, x): &(usize, usize)| match unit_only {
        true => l.label(x).to_string(),
        false => format!("{}⊗{}", a.carrier().label(alpha), l.label(x)),
    };
    let carrier = GradedModule::new(pairs.iter().map(|p| (label(p), l.degree(p.1) - a.degree(p.0))).collect())?;
    let weights: Vec<u32> = pairs.iter().map(|p| l.weight(p.1)).collect();

    let shell = SLInfinityAlgebra::new(carrier.clone(), weights.clone(), Convention::Shifted, Vec::new(), l.arity_cap())?;
    let prune = check_filtration_law(&l).passed();
    let max_w = l.max_weight();
    let mut entries = Vec::new();
    for k in 1..=l.arity_cap() {
        let tuples = shell.multisets(k, |t| {
            !prune || t.len() < 2 || t.iter().map(|&i| weights[i]).sum::<u32>() <= max_w
        });
        for t in tuples {
            if shell.canonical(&t).is_none() {
                continue;
            }
            let out_deg = shell.output_degree(&t);
            if out_deg > hi || out_deg < 0 {
                continue;
            }
            let xs: Vec<usize> = t.iter().map(|&i| pairs[i].1).collect();
            let alphas: Vec<usize> = t.iter().map(|&i| pairs[i].0).collect();
            let mut value = SparseVec::new();
            let lx = l.bracket(&xs);
            if !lx.is_zero() {
                let mut e: i64 = 0;
                for i in 0..k {
                    for j in 0..i {
                        e += (l.degree(xs[i]) as i64) * (a.degree(alphas[j]) as i64);
                    }
                }
                let mut prod = SparseVec::unit(alphas[0]);
                for &al in &alphas[1..] {
                    prod = a.mul(&prod, &SparseVec::unit(al));
                }
                add_tensor(&mut value, &lx, &prod, &sign(e), &index);
            }
            if k == 1 {
                let (alpha, x) = pairs[t[0]];
                let da = a.d(&SparseVec::unit(alpha));
                add_tensor(&mut value, &SparseVec::unit(x), &da, &sign(l.degree(x) as i64), &index);
            }
            if !value.is_zero() {
                entries.push((t, value));
            }
        }
    }
    let complete = match l.complete_through() {
        Some(c) => hi.min(c - a.top_degree()),
        None => hi,
    };
    let full = SLInfinityAlgebra::new(carrier.clone(), weights, Convention::Shifted, entries, l.arity_cap())?
        .with_degree_cap(Some(hi))
        .with_weight_cap(l.weight_cap())
        .with_complete_through(Some(complete));

    let action = match (a.action(), l_action) {
        (Some(ra), Some(rl)) => {
            if ra.group() != rl.group() {
                return Err(Error::input("the two actions are by different groups"));
            }
            let n = pairs.len();
            let mut mats = Vec::with_capacity(ra.group().order());
            for g in ra.group().elements() {
                let mut m = Matrix::zeros(n, n);
                for (col, &(alpha, x)) in pairs.iter().enumerate() {
                    let ga = ra.apply(g, &SparseVec::unit(alpha));
                    let gx = rl.apply(g, &SparseVec::unit(x));
                    for (b, c1) in ga.iter() {
                        for (y, c2) in gx.iter() {
                            if let Some(row) = index((b, y)) {
                                m.set(row, col, c1 * c2);
                            }
                        }
                    }
                }
                mats.push(m);
            }
            Some(GroupRepresentation::new_unchecked(ra.group().clone(), carrier.clone(), mats)?)
        }
        (None, None) => None,
        _ => return Err(Error::input("only one factor carries an action; give both or neither")),
    };

    let (algebra, sub, notice) = positive_truncation(&full)?;
    let action = match (action, sub) {
        (Some(rep), Some(sub)) => Some(rep.restrict(&sub, algebra.carrier().clone())?),
        (rep, _) => rep,
    };
    Ok(TensorModel { algebra, action, notice })
}

fn add_tensor(
    out: &mut SparseVec,
    xs: &SparseVec,
    alphas: &SparseVec,
    s: &Scalar,
    index: &dyn Fn((usize, usize)) -> Option<usize>,
) {
    for (x, cx) in xs.iter() {
        for (alpha, ca) in alphas.iter() {
            if let Some(i) = index((alpha, x)) {
                out.add_term(i, s * cx * ca);
            }
        }
    }
}
