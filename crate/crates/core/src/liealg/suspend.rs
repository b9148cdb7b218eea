//! Passage between dg Lie algebras and shifted L∞ algebras.
//!
//! Sign convention, fixed once: with `|sx| = |x| + 1`,
//!
//! ```text
//! ℓ_1(sx)     = −s(dx)
//! ℓ_2(sx, sy) = (−1)^{|x|} s[x, y]
//! ```
//!
//! This makes ℓ_2 graded symmetric of degree −1, and the Jacobi and Leibniz
//! identities of `(d, [,])` become the shifted Jacobi identities for n ≤ 3.

use crate::error::{Error, Result};
use crate::qlinalg::{sign, SparseVec};

use super::algebra::{Convention, SLInfinityAlgebra};

/// dg Lie → shifted. Labels, weights and bracket keys are kept; degrees move up by one.
pub fn suspend(l: &SLInfinityAlgebra) -> Result<SLInfinityAlgebra> {
    if l.convention() != Convention::DgLie {
        return Err(Error::input("suspend expects a dg Lie algebra"));
    }
    let entries = l
        .entries()
        .map(|(key, value)| {
            let s = match key.len() {
                1 => -crate::qlinalg::one(),
                _ => sign(l.degree(key[0]) as i64),
            };
            (key.clone(), value.scaled(&s))
        })
        .collect();
    rebuild(l, Convention::Shifted, 1, entries)
}

/// shifted → dg Lie; only defined when no bracket of arity > 2 is present.
pub fn desuspend(l: &SLInfinityAlgebra) -> Result<SLInfinityAlgebra> {
    if l.convention() != Convention::Shifted {
        return Err(Error::input("desuspend expects a shifted algebra"));
    }
    if l.max_arity() > 2 {
        return Err(Error::input("only algebras with ℓ_n = 0 for n > 2 desuspend to dg Lie algebras"));
    }
    let entries = l
        .entries()
        .map(|(key, value)| {
            let s = match key.len() {
                1 => -crate::qlinalg::one(),
                _ => sign((l.degree(key[0]) - 1) as i64),
            };
            (key.clone(), value.scaled(&s))
        })
        .collect();
    rebuild(l, Convention::DgLie, -1, entries)
}

fn rebuild(
    l: &SLInfinityAlgebra,
    convention: Convention,
    shift: i32,
    entries: Vec<(Vec<usize>, SparseVec)>,
) -> Result<SLInfinityAlgebra> {
    let carrier = l.carrier().shifted(shift);
    let arity = l.arity_cap().min(2).max(l.max_arity());
    Ok(SLInfinityAlgebra::new(carrier, l.weights().to_vec(), convention, entries, arity.max(1))?
        .with_degree_cap(l.degree_cap().map(|c| c + shift))
        .with_weight_cap(l.weight_cap())
        .with_complete_through(l.complete_through().map(|c| c + shift)))
}

/// Brings either convention to the shifted one.
pub fn as_shifted(l: &SLInfinityAlgebra) -> Result<SLInfinityAlgebra> {
    match l.convention() {
        Convention::Shifted => Ok(l.clone()),
        Convention::DgLie => suspend(l),
    }
}
