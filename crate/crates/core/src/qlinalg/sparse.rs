use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::scalar::{format_scalar, Scalar};

/// A finitely supported vector indexed by basis position. Zero entries are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec(BTreeMap<usize, Scalar>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(BTreeMap::new())
    }

    pub fn unit(i: usize) -> Self {
        let mut v = SparseVec::new();
        v.0.insert(i, Scalar::one());
        v
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in values.iter().enumerate() {
            v.add_term(i, c.clone());
        }
        v
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (&i, c) in &self.0 {
            out[i] = c.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(i) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        // Unit coefficients are the common case and skip a gcd.
        if c.is_one() {
            for (i, x) in other.iter() {
                self.add_term(i, x.clone());
            }
        } else if (-c).is_one() {
            for (i, x) in other.iter() {
                self.add_term(i, -x);
            }
        } else {
            for (i, x) in other.iter() {
                self.add_term(i, x * c);
            }
        }
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(&i, x)| (i, x * c)).collect())
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec(self.0.iter().map(|(&i, x)| (i, -x)).collect())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn plus(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    /// Keeps only the coordinates accepted by `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(usize) -> bool) -> SparseVec {
        SparseVec(self.0.iter().filter(|(&i, _)| keep(i)).map(|(&i, c)| (i, c.clone())).collect())
    }

    /// Re-indexes coordinates; entries mapped to `None` are dropped.
    pub fn reindexed(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in self.iter() {
            if let Some(j) = f(i) {
                out.add_term(j, c.clone());
            }
        }
        out
    }

    /// Renders the vector with basis labels: `u1 + u2`, `[a,b] - 1/2 x`.
    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> LabelledVec<'a> {
        LabelledVec { vec: self, labels }
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in iter {
            v.add_term(i, c);
        }
        v
    }
}

pub struct LabelledVec<'a> {
    vec: &'a SparseVec,
    labels: &'a [String],
}

impl fmt::Display for LabelledVec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vec.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.vec.iter().enumerate() {
            let label = self.labels.get(i).map(String::as_str).unwrap_or("?");
            let mag = c.abs();
            let coeff = if mag.is_one() { String::new() } else { format!("{} ", format_scalar(&mag)) };
            match (n, c.is_negative()) {
                (0, false) => write!(f, "{coeff}{label}")?,
                (0, true) => write!(f, "-{coeff}{label}")?,
                (_, false) => write!(f, " + {coeff}{label}")?,
                (_, true) => write!(f, " - {coeff}{label}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::scalar::{q, qr};

    #[test]
    fn arithmetic_drops_zeros() {
        let mut v = SparseVec::unit(2);
        v.add_term(2, q(-1));
        assert!(v.is_zero());
        let a = SparseVec::from_dense(&[q(1), q(0), qr(1, 2)]);
        assert_eq!(a.len(), 2);
        assert_eq!(a.sub(&a), SparseVec::new());
    }

    #[test]
    fn labelled_display() {
        let labels = vec!["u1".to_string(), "u2".to_string(), "w".to_string()];
        let v = SparseVec::from_dense(&[q(1), q(-1), qr(-1, 2)]);
        assert_eq!(v.display_with(&labels).to_string(), "u1 - u2 - 1/2 w");
        assert_eq!(SparseVec::new().display_with(&labels).to_string(), "0");
    }
}
