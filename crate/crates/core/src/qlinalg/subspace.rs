use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::graded::GradedModule;
use super::matrix::Matrix;
use super::sparse::SparseVec;

/// A subspace spanned by independent homogeneous vectors, with fast
/// coordinate solving.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: GradedModule,
    vectors: Vec<SparseVec>,
    solvers: BTreeMap<i32, Solver>,
}

#[derive(Clone, Debug)]
struct Solver {
    members: Vec<usize>,
    rows: Vec<usize>,
    left_inverse: Matrix,
}

impl Subspace {
    pub fn new(ambient: &GradedModule, vectors: Vec<SparseVec>) -> Result<Self> {
        let mut groups: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (k, v) in vectors.iter().enumerate() {
            let d = ambient
                .degree_of(v)
                .ok_or_else(|| Error::input("subspace generators must be nonzero and homogeneous"))?;
            groups.entry(d).or_default().push(k);
        }
        let mut solvers = BTreeMap::new();
        for (d, members) in groups {
            let cols: Vec<SparseVec> = members.iter().map(|&k| ambient.local(&vectors[k], d)).collect();
            let block = Matrix::from_columns(ambient.dim_in(d), &cols);
            let rows = block.transpose().rref().pivots;
            if rows.len() < members.len() {
                return Err(Error::input(format!("subspace generators in degree {d} are dependent")));
            }
            let square = Matrix::from_rows(rows.iter().map(|&r| block.row(r).to_vec()).collect());
            let left_inverse = square.inverse().expect("pivot rows form an invertible block");
            solvers.insert(d, Solver { members, rows, left_inverse });
        }
        Ok(Subspace { ambient: ambient.clone(), vectors, solvers })
    }

    pub fn ambient(&self) -> &GradedModule {
        &self.ambient
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `v` in the spanning vectors, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut out = SparseVec::new();
        let mut by_degree: BTreeMap<i32, SparseVec> = BTreeMap::new();
        for (i, c) in v.iter() {
            by_degree.entry(self.ambient.degree(i)).or_default().add_term(i, c.clone());
        }
        for (d, part) in by_degree {
            let solver = self.solvers.get(&d)?;
            let local = self.ambient.local(&part, d);
            let rhs = SparseVec::from_dense(&solver.rows.iter().map(|&r| local.get(r)).collect::<Vec<_>>());
            let x = solver.left_inverse.apply(&rhs);
            let mut back = SparseVec::new();
            for (j, c) in x.iter() {
                back.add_scaled(&self.vectors[solver.members[j]], c);
            }
            if back != part {
                return None;
            }
            for (j, c) in x.iter() {
                out.add_term(solver.members[j], c.clone());
            }
        }
        Some(out)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    /// Ambient vector with the given coordinates.
    pub fn embed(&self, coords: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in coords.iter() {
            out.add_scaled(&self.vectors[j], c);
        }
        out
    }

    /// A graded module whose basis is the spanning vectors, labelled by their
    /// expansion in the ambient basis.
    pub fn as_module(&self) -> GradedModule {
        let labels = self.ambient.labels();
        GradedModule::new(
            self.vectors
                .iter()
                .map(|v| (v.display_with(labels).to_string(), self.ambient.degree_of(v).unwrap()))
                .collect(),
        )
        .expect("independent vectors have distinct expansions")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::scalar::q;

    #[test]
    fn coordinates_round_trip() {
        let m = GradedModule::new(vec![("a".into(), 1), ("b".into(), 1), ("c".into(), 2)]).unwrap();
        let s = Subspace::new(&m, vec![SparseVec::from_dense(&[q(1), q(1), q(0)]), SparseVec::unit(2)]).unwrap();
        let v = SparseVec::from_dense(&[q(3), q(3), q(-2)]);
        let c = s.coordinates(&v).unwrap();
        assert_eq!(c, SparseVec::from_dense(&[q(3), q(-2)]));
        assert_eq!(s.embed(&c), v);
        assert!(!s.contains(&SparseVec::unit(0)));
        assert_eq!(s.as_module().label(0), "a + b");
        assert!(Subspace::new(&m, vec![SparseVec::unit(0), SparseVec::unit(0)]).is_err());
    }
}
