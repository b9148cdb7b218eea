use crate::error::{Error, Result};

use super::graded::{GradedModule, LinearMap};
use super::matrix::Matrix;
use super::scalar::Scalar;
use super::sparse::SparseVec;

/// A finite chain complex with a degree −1 differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    differential: LinearMap,
}

/// Homology in one degree: cycles, boundaries, and chosen representative
/// cycles whose classes form a basis. All vectors are in global coordinates.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i32,
    pub cycles: Vec<SparseVec>,
    pub boundaries: Vec<SparseVec>,
    pub representatives: Vec<SparseVec>,
    module: GradedModule,
}

impl ChainComplex {
    /// Validates `d ∘ d = 0`; a failure names the lowest offending degree.
    pub fn new(differential: LinearMap) -> Result<Self> {
        if differential.shift() != -1 || differential.source() != differential.target() {
            return Err(Error::input("a differential is an endomorphism of degree -1"));
        }
        let dd = differential.compose(&differential);
        let module = differential.source();
        for n in module.occupied_degrees() {
            if module.indices_in(n).iter().any(|&i| !dd.image_of(i).is_zero()) {
                return Err(Error::structural(format!("d∘d ≠ 0 on degree {n}")));
            }
        }
        Ok(ChainComplex { differential })
    }

    pub fn zero_differential(module: GradedModule) -> Self {
        ChainComplex { differential: LinearMap::zero(module.clone(), module, -1) }
    }

    pub fn module(&self) -> &GradedModule {
        self.differential.source()
    }

    pub fn differential(&self) -> &LinearMap {
        &self.differential
    }

    pub fn homology(&self, n: i32) -> Homology {
        let module = self.module().clone();
        let cycles_local = self.differential.kernel_local(n);
        let into_n = self.differential.block(n + 1);
        let boundaries_local = if into_n.rows() == 0 { Vec::new() } else { into_n.column_space() };
        let dim = module.dim_in(n);

        let mut chosen = boundaries_local.clone();
        let mut reps_local = Vec::new();
        let mut rank = super::matrix::rank_of(dim, &chosen);
        for z in &cycles_local {
            chosen.push(z.clone());
            let r = super::matrix::rank_of(dim, &chosen);
            if r > rank {
                rank = r;
                reps_local.push(z.clone());
            } else {
                chosen.pop();
            }
        }
        let g = |vs: &[SparseVec]| vs.iter().map(|v| module.global(v, n)).collect::<Vec<_>>();
        Homology {
            degree: n,
            cycles: g(&cycles_local),
            boundaries: g(&boundaries_local),
            representatives: g(&reps_local),
            module: module.clone(),
        }
    }
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of the cycle `z` in the representative basis.
    pub fn class_of(&self, z: &SparseVec) -> Result<Vec<Scalar>> {
        let n = self.degree;
        let dim = self.module.dim_in(n);
        let mut cols: Vec<SparseVec> = self.representatives.iter().map(|v| self.module.local(v, n)).collect();
        cols.extend(self.boundaries.iter().map(|v| self.module.local(v, n)));
        if z.support().any(|i| self.module.degree(i) != n) {
            return Err(Error::structural(format!("vector is not a cycle in degree {n}")));
        }
        let target = self.module.local(z, n);
        if cols.is_empty() {
            return if target.is_zero() {
                Ok(Vec::new())
            } else {
                Err(Error::structural(format!("vector is not a cycle in degree {n}")))
            };
        }
        let x = Matrix::from_columns(dim, &cols)
            .solve(&target)
            .ok_or_else(|| Error::structural(format!("vector is not a cycle in degree {n}")))?;
        Ok((0..self.dim()).map(|i| x.get(i)).collect())
    }
}

/// Homology dimension of a complex in one degree.
pub fn homology(cx: &ChainComplex, degree: i32) -> Homology {
    cx.homology(degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::scalar::q;

    fn module(spec: &[(&str, i32)]) -> GradedModule {
        GradedModule::new(spec.iter().map(|(l, d)| (l.to_string(), *d)).collect()).unwrap()
    }

    #[test]
    fn zero_differential_keeps_dims() {
        let v = module(&[("a", 1), ("b", 1), ("c", 2), ("d", 2), ("e", 2), ("f", 3), ("g", 3)]);
        let cx = ChainComplex::zero_differential(v);
        let dims: Vec<usize> = (1..=3).map(|n| cx.homology(n).dim()).collect();
        assert_eq!(dims, vec![2, 3, 2]);
    }

    #[test]
    fn acyclic_identity() {
        let v = module(&[("t", 1), ("s", 0)]);
        let d = LinearMap::new(v.clone(), v, -1, vec![SparseVec::unit(1), SparseVec::new()]).unwrap();
        let cx = ChainComplex::new(d).unwrap();
        assert_eq!(cx.homology(0).dim(), 0);
        assert_eq!(cx.homology(1).dim(), 0);
        assert_eq!(cx.homology(7).dim(), 0);
    }

    #[test]
    fn rejects_non_complex() {
        let v = module(&[("a", 2), ("b", 1), ("c", 0)]);
        let d = LinearMap::new(v.clone(), v, -1, vec![SparseVec::unit(1), SparseVec::unit(2), SparseVec::new()]).unwrap();
        let err = ChainComplex::new(d).unwrap_err();
        assert_eq!(err, Error::Structural("d∘d ≠ 0 on degree 2".into()));
    }

    #[test]
    fn class_coordinates() {
        // a ↦ b - c, so [b] = [c].
        let v = module(&[("a", 1), ("b", 0), ("c", 0)]);
        let img = SparseVec::from_dense(&[q(0), q(1), q(-1)]);
        let d = LinearMap::new(v.clone(), v, -1, vec![img, SparseVec::new(), SparseVec::new()]).unwrap();
        let h = ChainComplex::new(d).unwrap().homology(0);
        assert_eq!(h.dim(), 1);
        let cb = h.class_of(&SparseVec::unit(1)).unwrap();
        let cc = h.class_of(&SparseVec::unit(2)).unwrap();
        assert_eq!(cb, cc);
        assert!(h.class_of(&SparseVec::unit(0)).is_err());
    }
}
