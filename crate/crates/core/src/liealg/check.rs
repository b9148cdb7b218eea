//! Exhaustive verification of the symmetry, filtration and Jacobi laws.

use crate::qlinalg::{format_scalar, sign, Scalar, SparseVec};
use crate::report::CheckReport;

use super::algebra::{Convention, SLInfinityAlgebra};
use super::suspend::suspend;

/// Checks every stored entry against the Koszul (anti)symmetry law: arity and
/// degree, forced vanishing on repeated arguments, and agreement of entries
/// stored on non-sorted keys with the sorted entry.
pub fn check_symmetry(l: &SLInfinityAlgebra) -> CheckReport {
    let entries: Vec<_> = l.entries().collect();
    CheckReport::run("symmetry", entries, |(key, value)| {
        let labels = l.tuple_labels(key);
        let arity = Some(key.len());
        if l.convention() == Convention::DgLie && key.len() > 2 {
            return Err((arity, labels, "dg Lie brackets are at most binary".into()));
        }
        let deg = l.output_degree(key);
        if value.support().any(|j| l.degree(j) != deg) {
            return Err((arity, labels, format!("value is not homogeneous of degree {deg}")));
        }
        match l.canonical(key) {
            None => Err((arity, labels, "repeated argument forces this bracket to vanish".into())),
            Some((canon, s)) if canon != **key => {
                let expected = l.entries().find(|(k, _)| **k == canon).map(|(_, v)| v.scaled(&s)).unwrap_or_default();
                if expected == *value {
                    Ok(())
                } else {
                    Err((
                        arity,
                        labels,
                        format!(
                            "expected sign {} times the entry on ({}), i.e. {}, found {}",
                            format_scalar(&s),
                            l.tuple_labels(&canon).join(", "),
                            expected.display_with(l.labels()),
                            value.display_with(l.labels())
                        ),
                    ))
                }
            }
            Some(_) => Ok(()),
        }
    })
}

/// ℓ_n(F^{i_1}, …, F^{i_n}) ⊆ F^{i_1 + … + i_n} on every stored entry.
pub fn check_filtration_law(l: &SLInfinityAlgebra) -> CheckReport {
    let entries: Vec<_> = l.entries().collect();
    CheckReport::run("filtration", entries, |(key, value)| {
        let w: u32 = key.iter().map(|&i| l.weight(i)).sum();
        let w = if key.len() == 1 { l.weight(key[0]) } else { w };
        match value.support().find(|&j| l.weight(j) < w) {
            None => Ok(()),
            Some(j) => Err((
                Some(key.len()),
                l.tuple_labels(key),
                format!("output component {} has weight {} < {w}", l.label(j), l.weight(j)),
            )),
        }
    })
}

/// Default range for [`check_jacobi`]: beyond `2·arity − 1` every term vanishes.
pub fn default_jacobi_range(l: &SLInfinityAlgebra) -> usize {
    (2 * l.arity_cap().max(1)).saturating_sub(1).max(1)
}

/// Evaluates the generalized Jacobi identities for all `n ≤ n_max` on all
/// non-decreasing basis tuples inside the caps. dg Lie algebras are checked
/// through their suspension.
pub fn check_jacobi(l: &SLInfinityAlgebra, n_max: usize) -> CheckReport {
    let shifted;
    let l = match l.convention() {
        Convention::Shifted => l,
        Convention::DgLie => match suspend(l) {
            Ok(s) => {
                shifted = s;
                &shifted
            }
            Err(e) => return CheckReport::fail("jacobi", None, Vec::new(), e.to_string(), 0),
        },
    };
    let prune = check_filtration_law(l).passed();
    let max_w = l.max_weight();
    let mut cases = 0;
    for n in 1..=n_max {
        let tuples = l.multisets(n, |t| admissible(l, t, prune, max_w));
        for t in tuples {
            cases += 1;
            let r = jacobiator(l, &t);
            if !r.is_zero() {
                return CheckReport::fail(
                    "jacobi",
                    Some(n),
                    l.tuple_labels(&t),
                    format!("residual {}", r.display_with(l.labels())),
                    cases,
                );
            }
        }
    }
    CheckReport::pass("jacobi", cases)
}

fn admissible(l: &SLInfinityAlgebra, t: &[usize], prune: bool, max_w: u32) -> bool {
    if prune && t.len() > 1 && t.iter().map(|&i| l.weight(i)).sum::<u32>() > max_w {
        return false;
    }
    if let Some(cap) = l.degree_cap() {
        let pos: i32 = t.iter().map(|&i| l.degree(i).max(0)).sum();
        let top = t.iter().map(|&i| l.degree(i)).max().unwrap_or(0);
        if pos.max(top) - 1 > cap {
            return false;
        }
    }
    true
}

/// Koszul sign of the unshuffle placing the positions in `first` ahead of the rest.
pub(crate) fn unshuffle_sign(degrees: &[i32], first: &[usize]) -> Scalar {
    let mut e: i64 = 0;
    for &a in first {
        for b in 0..a {
            if !first.contains(&b) {
                e += (degrees[a] as i64) * (degrees[b] as i64);
            }
        }
    }
    sign(e)
}

/// `Σ_k Σ_{σ ∈ Sh(k, n−k)} ε(σ) ℓ_{n−k+1}(ℓ_k(x_σ(1..k)), x_σ(k+1..n))`.
pub fn jacobiator(l: &SLInfinityAlgebra, t: &[usize]) -> SparseVec {
    let n = t.len();
    let degrees: Vec<i32> = t.iter().map(|&i| l.degree(i)).collect();
    let mut out = SparseVec::new();
    for k in 1..=n {
        if k > l.arity_cap() || n - k + 1 > l.arity_cap() {
            continue;
        }
        for first in subsets(n, k) {
            let inner_args: Vec<usize> = first.iter().map(|&p| t[p]).collect();
            let inner = l.bracket(&inner_args);
            if inner.is_zero() {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|p| !first.contains(p)).map(|p| t[p]).collect();
            let eps = unshuffle_sign(&degrees, &first);
            let mut args = Vec::with_capacity(n - k + 1);
            for (i, c) in inner.iter() {
                args.clear();
                args.push(i);
                args.extend_from_slice(&rest);
                out.add_scaled(&l.bracket(&args), &(&eps * c));
            }
        }
    }
    out
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Direct dg Lie check: d² = 0, Leibniz rule, graded Jacobi identity, on
/// sorted tuples. Independent of the suspension route used by
/// [`check_jacobi`].
pub fn check_dglie_identities(l: &SLInfinityAlgebra) -> CheckReport {
    if l.convention() != Convention::DgLie {
        return CheckReport::fail("dglie", None, Vec::new(), "not a dg Lie algebra", 0);
    }
    let d = |v: &SparseVec| l.eval(&[v]);
    let br = |a: &SparseVec, b: &SparseVec| l.eval(&[a, b]);
    let deg = |i: usize| l.degree(i) as i64;
    let unit = SparseVec::unit;
    let mut cases = 0;
    for i in 0..l.dim() {
        cases += 1;
        let r = d(&d(&unit(i)));
        if !r.is_zero() {
            return CheckReport::fail("dglie", Some(1), l.tuple_labels(&[i]), "d∘d ≠ 0", cases);
        }
    }
    for t in l.multisets(2, |_| true) {
        cases += 1;
        let (x, y) = (unit(t[0]), unit(t[1]));
        let lhs = d(&br(&x, &y));
        let rhs = br(&d(&x), &y).plus(&br(&x, &d(&y)).scaled(&sign(deg(t[0]))));
        if lhs != rhs {
            return CheckReport::fail("dglie", Some(2), l.tuple_labels(&t), "Leibniz rule fails", cases);
        }
    }
    let max_w = l.max_weight();
    for t in l.multisets(3, |t| t.iter().map(|&i| l.weight(i)).sum::<u32>() <= max_w) {
        cases += 1;
        let (x, y, z) = (unit(t[0]), unit(t[1]), unit(t[2]));
        let lhs = br(&x, &br(&y, &z));
        let rhs = br(&br(&x, &y), &z).plus(&br(&y, &br(&x, &z)).scaled(&sign(deg(t[0]) * deg(t[1]))));
        if lhs != rhs {
            let r = lhs.sub(&rhs);
            return CheckReport::fail(
                "dglie",
                Some(3),
                l.tuple_labels(&t),
                format!("Jacobi residual {}", r.display_with(l.labels())),
                cases,
            );
        }
    }
    CheckReport::pass("dglie", cases)
}
