use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::matrix::Matrix;
use super::sparse::SparseVec;

/// A finite graded ℚ-vector space with a named basis. Basis elements are
/// numbered globally; every element carries a single degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedModule {
    labels: Vec<String>,
    degrees: Vec<i32>,
}

impl GradedModule {
    pub fn new(elements: Vec<(String, i32)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (label, deg) in &elements {
            if !seen.insert((deg, label.as_str())) {
                return Err(Error::input(format!("label {label} repeated in degree {deg}")));
            }
        }
        let (labels, degrees) = elements.into_iter().unzip();
        Ok(GradedModule { labels, degrees })
    }

    pub fn empty() -> Self {
        GradedModule::default()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dim_in(&self, n: i32) -> usize {
        self.degrees.iter().filter(|&&d| d == n).count()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Distinct degrees that occur, ascending.
    pub fn occupied_degrees(&self) -> Vec<i32> {
        self.degrees.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    /// Global indices of the basis elements of degree `n`, in basis order.
    pub fn indices_in(&self, n: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == n).collect()
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The same basis with every degree moved by `k`.
    pub fn shifted(&self, k: i32) -> GradedModule {
        GradedModule { labels: self.labels.clone(), degrees: self.degrees.iter().map(|d| d + k).collect() }
    }

    /// Degree of a homogeneous vector; `None` for zero or mixed vectors.
    pub fn degree_of(&self, v: &SparseVec) -> Option<i32> {
        let mut it = v.support().map(|i| self.degrees[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Coordinates of `v` relative to the basis of degree `n`.
    pub fn local(&self, v: &SparseVec, n: i32) -> SparseVec {
        let idx = self.indices_in(n);
        v.reindexed(|i| idx.binary_search(&i).ok())
    }

    /// Inverse of [`GradedModule::local`].
    pub fn global(&self, v: &SparseVec, n: i32) -> SparseVec {
        let idx = self.indices_in(n);
        v.reindexed(|i| idx.get(i).copied())
    }
}

/// A homogeneous linear map, stored as the image of each source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    source: GradedModule,
    target: GradedModule,
    shift: i32,
    images: Vec<SparseVec>,
}

impl LinearMap {
    pub fn new(source: GradedModule, target: GradedModule, shift: i32, images: Vec<SparseVec>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::input(format!(
                "linear map has {} images for a source of dimension {}",
                images.len(),
                source.dim()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            for j in img.support() {
                if j >= target.dim() {
                    return Err(Error::input(format!("image of {} leaves the target basis", source.label(i))));
                }
                if target.degree(j) != source.degree(i) + shift {
                    return Err(Error::input(format!(
                        "image of {} (degree {}) has a component {} in degree {}, expected degree {}",
                        source.label(i),
                        source.degree(i),
                        target.label(j),
                        target.degree(j),
                        source.degree(i) + shift
                    )));
                }
            }
        }
        Ok(LinearMap { source, target, shift, images })
    }

    pub fn zero(source: GradedModule, target: GradedModule, shift: i32) -> Self {
        let images = vec![SparseVec::new(); source.dim()];
        LinearMap { source, target, shift, images }
    }

    pub fn identity(module: GradedModule) -> Self {
        let images = (0..module.dim()).map(SparseVec::unit).collect();
        LinearMap { source: module.clone(), target: module, shift: 0, images }
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn image_of(&self, i: usize) -> &SparseVec {
        &self.images[i]
    }

    pub fn images(&self) -> &[SparseVec] {
        &self.images
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(&self.images[i], c);
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> LinearMap {
        let images = first.images.iter().map(|v| self.apply(v)).collect();
        LinearMap {
            source: first.source.clone(),
            target: self.target.clone(),
            shift: first.shift + self.shift,
            images,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(SparseVec::is_zero)
    }

    /// The block from degree `n` of the source to degree `n + shift` of the target.
    pub fn block(&self, n: i32) -> Matrix {
        let cols: Vec<SparseVec> =
            self.source.indices_in(n).into_iter().map(|i| self.target.local(&self.images[i], n + self.shift)).collect();
        Matrix::from_columns(self.target.dim_in(n + self.shift), &cols)
    }

    /// Basis of the kernel in degree `n`, as vectors in global source coordinates.
    pub fn kernel(&self, n: i32) -> Result<Vec<SparseVec>> {
        if let Some((lo, hi)) = self.source.degree_range() {
            if n < lo || n > hi {
                return Err(Error::DegreeOutOfRange { degree: n, lo, hi });
            }
        } else {
            return Err(Error::DegreeOutOfRange { degree: n, lo: 0, hi: -1 });
        }
        Ok(self.kernel_local(n).iter().map(|v| self.source.global(v, n)).collect())
    }

    pub(crate) fn kernel_local(&self, n: i32) -> Vec<SparseVec> {
        let block = self.block(n);
        if block.rows() == 0 {
            return (0..block.cols()).map(SparseVec::unit).collect();
        }
        block.kernel()
    }
}

/// `solve_kernel` of the interface: kernel basis of `map` in one degree.
pub fn solve_kernel(map: &LinearMap, degree: i32) -> Result<Vec<SparseVec>> {
    map.kernel(degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::scalar::q;

    fn module(spec: &[(&str, i32)]) -> GradedModule {
        GradedModule::new(spec.iter().map(|(l, d)| (l.to_string(), *d)).collect()).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let v = module(&[("a", 2), ("b", 2), ("c", 2)]);
        let zero = LinearMap::zero(v.clone(), v.clone(), 0);
        assert_eq!(solve_kernel(&zero, 2).unwrap().len(), 3);
        assert!(solve_kernel(&LinearMap::identity(v.clone()), 2).unwrap().is_empty());
        assert!(matches!(solve_kernel(&zero, 5), Err(Error::DegreeOutOfRange { .. })));

        let w = module(&[("t", 1), ("s", 0)]);
        let d = LinearMap::new(w.clone(), w.clone(), -1, vec![SparseVec::unit(1).scaled(&q(2)), SparseVec::new()]).unwrap();
        assert!(solve_kernel(&d, 1).unwrap().is_empty());
        assert_eq!(solve_kernel(&d, 0).unwrap(), vec![SparseVec::unit(1)]);
    }

    #[test]
    fn rejects_bad_degrees_and_labels() {
        assert!(GradedModule::new(vec![("x".into(), 1), ("x".into(), 1)]).is_err());
        assert!(GradedModule::new(vec![("x".into(), 1), ("x".into(), 2)]).is_ok());
        let w = module(&[("t", 1), ("s", 0)]);
        assert!(LinearMap::new(w.clone(), w, 0, vec![SparseVec::unit(1), SparseVec::new()]).is_err());
    }

    #[test]
    fn local_global_round_trip() {
        let v = module(&[("a", 1), ("b", 2), ("c", 1)]);
        let x = SparseVec::from_dense(&[q(3), q(0), q(-1)]);
        let l = v.local(&x, 1);
        assert_eq!(l, SparseVec::from_dense(&[q(3), q(-1)]));
        assert_eq!(v.global(&l, 1), x);
        assert_eq!(v.degree_of(&x), Some(1));
        assert_eq!(v.occupied_degrees(), vec![1, 2]);
    }
}
