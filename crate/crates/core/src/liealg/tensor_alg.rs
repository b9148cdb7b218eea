//! The free associative algebra on graded letters, used to realize free Lie
//! algebras by commutators.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qlinalg::{sign, Scalar, SparseVec};

/// A noncommutative polynomial: words (letter indices) to coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElem(pub BTreeMap<Vec<usize>, Scalar>);

impl TensorElem {
    pub fn letter(i: usize) -> Self {
        let mut m = BTreeMap::new();
        m.insert(vec![i], Scalar::from_integer(1.into()));
        TensorElem(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, w: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(w) {
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

    pub fn add_scaled(&mut self, other: &TensorElem, c: &Scalar) {
        for (w, x) in &other.0 {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn mul(&self, other: &TensorElem) -> TensorElem {
        let mut out = TensorElem::default();
        for (u, a) in &self.0 {
            for (v, b) in &other.0 {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// Graded commutator `PQ − (−1)^{pq} QP` for homogeneous `P`, `Q` of degrees `p`, `q`.
    pub fn commutator(&self, p: i32, other: &TensorElem, q: i32) -> TensorElem {
        let mut out = self.mul(other);
        out.add_scaled(&other.mul(self), &-sign((p as i64) * (q as i64)));
        out
    }
}

/// Incremental echelon basis over words, tracking how each reduced row is
/// written in terms of the inserted basis elements.
#[derive(Clone, Debug, Default)]
pub struct WordEchelon {
    rows: Vec<(TensorElem, SparseVec)>,
    pivot_of: HashMap<Vec<usize>, usize>,
    inserted: usize,
}

impl WordEchelon {
    pub fn len(&self) -> usize {
        self.inserted
    }

    pub fn is_empty(&self) -> bool {
        self.inserted == 0
    }

    /// Reduces `v`, returning the residual and the combination of basis
    /// elements that was subtracted.
    fn reduce(&self, v: &TensorElem) -> (TensorElem, SparseVec) {
        let mut res = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor: Option<Vec<usize>> = None;
        loop {
            let next = res
                .0
                .iter()
                .filter(|(w, _)| cursor.as_ref().is_none_or(|c| *w > c))
                .find(|(w, _)| self.pivot_of.contains_key(*w))
                .map(|(w, c)| (w.clone(), c.clone()));
            let Some((w, c)) = next else { break };
            let (row, row_combo) = &self.rows[self.pivot_of[&w]];
            res.add_scaled(row, &-c.clone());
            combo.add_scaled(row_combo, &c);
            cursor = Some(w);
        }
        (res, combo)
    }

    /// Adds `v` as basis element number `len()` if independent; returns
    /// whether it was added.
    pub fn insert(&mut self, v: &TensorElem) -> bool {
        let (res, combo) = self.reduce(v);
        if res.is_zero() {
            return false;
        }
        let (pivot, lead) = res.0.iter().next().map(|(w, c)| (w.clone(), c.clone())).unwrap();
        let inv = lead.recip();
        let mut row = TensorElem::default();
        row.add_scaled(&res, &inv);
        let mut row_combo = SparseVec::unit(self.inserted);
        row_combo.add_scaled(&combo, &-Scalar::from_integer(1.into()));
        let row_combo = row_combo.scaled(&inv);
        // Keep existing rows free of the new pivot so reduction stays one pass.
        for (r, rc) in &mut self.rows {
            if let Some(c) = r.0.get(&pivot).cloned() {
                r.add_scaled(&row, &-c.clone());
                rc.add_scaled(&row_combo, &-c);
            }
        }
        self.pivot_of.insert(pivot, self.rows.len());
        self.rows.push((row, row_combo));
        self.inserted += 1;
        true
    }

    /// Coordinates of `v` in the inserted basis; an error if `v` is outside the span.
    pub fn coordinates(&self, v: &TensorElem) -> Result<SparseVec> {
        let (res, combo) = self.reduce(v);
        if res.is_zero() {
            Ok(combo)
        } else {
            Err(Error::structural("element is not in the span of the chosen basis"))
        }
    }
}
