//! The Baker-Campbell-Hausdorff product, computed as `log(e^X e^Y)` in the
//! free associative algebra on two letters and projected to Lie brackets by
//! the Dynkin-Specht-Wever map.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::liealg::{Convention, SLInfinityAlgebra, TensorElem};
use crate::qlinalg::{factorial, Scalar, SparseVec};

/// Homogeneous components of `log(e^X e^Y)` by word length, `1..=cap`.
fn bch_series(cap: usize) -> Vec<TensorElem> {
    let truncate = |e: TensorElem| TensorElem(e.0.into_iter().filter(|(w, _)| w.len() <= cap).collect());
    let exp = |letter: usize| {
        let mut out = TensorElem::default();
        let mut power = TensorElem::default();
        power.add_term(Vec::new(), Scalar::from_integer(1.into()));
        for k in 0..=cap {
            out.add_scaled(&power, &factorial(k).recip());
            power = power.mul(&TensorElem::letter(letter));
        }
        out
    };
    let mut w = truncate(exp(0).mul(&exp(1)));
    w.0.remove(&Vec::new());
    let mut log = TensorElem::default();
    let mut power = w.clone();
    for n in 1..=cap {
        let c = Scalar::new(if n % 2 == 1 { 1.into() } else { (-1).into() }, (n as i64).into());
        log.add_scaled(&power, &c);
        power = truncate(power.mul(&w));
    }
    let mut parts = vec![TensorElem::default(); cap];
    for (word, c) in log.0 {
        parts[word.len() - 1].add_term(word, c);
    }
    parts
}

/// `bch(x, y)` through words of length `class_cap`, using `bracket` as the
/// Lie bracket. Fails when some bracket of length `class_cap + 1` in `x`, `y`
/// is nonzero, since the series would not have terminated.
pub fn bch_with(
    bracket: &dyn Fn(&SparseVec, &SparseVec) -> SparseVec,
    x: &SparseVec,
    y: &SparseVec,
    class_cap: usize,
) -> Result<SparseVec> {
    if class_cap == 0 {
        return Err(Error::input("class_cap must be at least 1"));
    }
    let mut layer = vec![x.clone(), y.clone()];
    for _ in 0..class_cap {
        let mut next = Vec::new();
        for b in &layer {
            for g in [x, y] {
                let v = bracket(g, b);
                if !v.is_zero() && !next.contains(&v) {
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    if !layer.is_empty() {
        return Err(Error::Capacity(format!(
            "brackets of length {} do not vanish; raise the nilpotency class cap",
            class_cap + 1
        )));
    }
    let letters = [x, y];
    let mut memo: BTreeMap<Vec<usize>, SparseVec> = BTreeMap::new();
    let mut out = SparseVec::new();
    for (len, part) in bch_series(class_cap).into_iter().enumerate() {
        let len = len + 1;
        for (word, c) in part.0 {
            // Left-normed bracket [[…[w1, w2], …], wn].
            let mut acc = letters[word[0]].clone();
            for p in 1..word.len() {
                if let Some(v) = memo.get(&word[..=p]) {
                    acc = v.clone();
                    continue;
                }
                acc = bracket(&acc, letters[word[p]]);
                memo.insert(word[..=p].to_vec(), acc.clone());
            }
            out.add_scaled(&acc, &(c / Scalar::from_integer((len as i64).into())));
        }
    }
    Ok(out)
}

/// `bch(x, y)` in the Lie algebra underlying `l`: degree 1 with ℓ_2 for a
/// shifted algebra, degree 0 with the bracket for a dg Lie algebra.
pub fn bch(l: &SLInfinityAlgebra, x: &SparseVec, y: &SparseVec, class_cap: usize) -> Result<SparseVec> {
    let deg = match l.convention() {
        Convention::Shifted => 1,
        Convention::DgLie => 0,
    };
    for i in x.support().chain(y.support()) {
        if i >= l.dim() || l.degree(i) != deg {
            return Err(Error::input(format!("bch arguments must lie in degree {deg}")));
        }
    }
    bch_with(&|a, b| l.eval(&[a, b]), x, y, class_cap)
}
