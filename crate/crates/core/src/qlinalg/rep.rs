use std::collections::VecDeque;

use num_traits::Zero;

use crate::error::{Error, Result};

use super::graded::{GradedModule, LinearMap};
use super::group::FiniteGroup;
use super::homology::ChainComplex;
use super::matrix::Matrix;
use super::scalar::Scalar;
use super::sparse::SparseVec;
use super::subspace::Subspace;

/// A linear action of a finite group on a graded module. Matrices are square
/// over the full basis (column `j` is the image of basis vector `j`) and
/// preserve degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRepresentation {
    group: FiniteGroup,
    carrier: GradedModule,
    matrices: Vec<Matrix>,
}

impl GroupRepresentation {
    /// Checks shapes, degree preservation, `ρ(e) = 1` and `ρ(g)ρ(h) = ρ(gh)`.
    pub fn new(group: FiniteGroup, carrier: GradedModule, matrices: Vec<Matrix>) -> Result<Self> {
        let rep = GroupRepresentation::new_unchecked(group, carrier, matrices)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Checks only shapes and degree preservation. Used for families of
    /// matrices that are meant to be tested against the group law later.
    pub fn new_unchecked(group: FiniteGroup, carrier: GradedModule, matrices: Vec<Matrix>) -> Result<Self> {
        let n = carrier.dim();
        if matrices.len() != group.order() {
            return Err(Error::input(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        for (g, m) in matrices.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::input(format!("matrix of {} is not {n}×{n}", group.name(g))));
            }
            for i in 0..n {
                for j in 0..n {
                    if !m.get(i, j).is_zero() && carrier.degree(i) != carrier.degree(j) {
                        return Err(Error::input(format!(
                            "{} sends {} to a different degree",
                            group.name(g),
                            carrier.label(j)
                        )));
                    }
                }
            }
        }
        Ok(GroupRepresentation { group, carrier, matrices })
    }

    pub fn trivial(group: FiniteGroup, carrier: GradedModule) -> Self {
        let matrices = vec![Matrix::identity(carrier.dim()); group.order()];
        GroupRepresentation { group, carrier, matrices }
    }

    /// Extends images of generators multiplicatively (breadth first from `e`)
    /// and then validates the result.
    pub fn from_generators(group: FiniteGroup, carrier: GradedModule, gens: &[(usize, Matrix)]) -> Result<Self> {
        let n = carrier.dim();
        let mut slots: Vec<Option<Matrix>> = vec![None; group.order()];
        slots[0] = Some(Matrix::identity(n));
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for (s, ms) in gens {
                let sh = group.mul(*s, h);
                let m = ms.mul(slots[h].as_ref().unwrap());
                match &slots[sh] {
                    None => {
                        slots[sh] = Some(m);
                        queue.push_back(sh);
                    }
                    Some(existing) if *existing != m => {
                        return Err(Error::structural(format!(
                            "generator images are inconsistent at {}",
                            group.name(sh)
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        if let Some(g) = slots.iter().position(Option::is_none) {
            return Err(Error::input(format!("the given generators do not reach {}", group.name(g))));
        }
        let matrices = slots.into_iter().map(Option::unwrap).collect();
        GroupRepresentation::new(group, carrier, matrices)
    }

    /// Identity at `e` and the homomorphism law on all pairs.
    pub fn validate(&self) -> Result<()> {
        match self.law_violation() {
            None => Ok(()),
            Some(msg) => Err(Error::structural(msg)),
        }
    }

    pub fn law_violation(&self) -> Option<String> {
        let g = &self.group;
        if self.matrices[0] != Matrix::identity(self.carrier.dim()) {
            return Some("the identity element does not act as the identity".into());
        }
        for a in g.elements() {
            for b in g.elements() {
                if self.matrices[a].mul(&self.matrices[b]) != self.matrices[g.mul(a, b)] {
                    return Some(format!(
                        "ρ({})ρ({}) ≠ ρ({})",
                        g.name(a),
                        g.name(b),
                        g.name(g.mul(a, b))
                    ));
                }
            }
        }
        None
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier(&self) -> &GradedModule {
        &self.carrier
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn apply(&self, g: usize, v: &SparseVec) -> SparseVec {
        self.matrices[g].apply(v)
    }

    pub fn is_trivial(&self) -> bool {
        let id = Matrix::identity(self.carrier.dim());
        self.matrices.iter().all(|m| *m == id)
    }

    /// The same matrices on a relabelled or regraded carrier of equal dimension.
    pub fn with_carrier(&self, carrier: GradedModule) -> Result<Self> {
        GroupRepresentation::new_unchecked(self.group.clone(), carrier, self.matrices.clone())
    }

    /// Block of `ρ(g)` on degree `n`.
    pub fn block(&self, g: usize, n: i32) -> Matrix {
        let idx = self.carrier.indices_in(n);
        Matrix::from_rows(
            idx.iter().map(|&i| idx.iter().map(|&j| self.matrices[g].get(i, j).clone()).collect()).collect(),
        )
    }

    /// Averaging operator `(1/|G|) Σ_g ρ(g)` on degree `n`.
    pub fn reynolds(&self, n: i32) -> Matrix {
        let k = self.carrier.dim_in(n);
        let mut sum = Matrix::zeros(k, k);
        for g in self.group.elements() {
            sum = sum.add(&self.block(g, n));
        }
        sum.scale(&Scalar::new(1.into(), (self.group.order() as i64).into()))
    }

    /// Basis of the common fixed vectors `∩_g ker(ρ(g) − 1)` in degree `n`,
    /// in global coordinates.
    pub fn invariants(&self, n: i32) -> Vec<SparseVec> {
        let k = self.carrier.dim_in(n);
        let mut stacked = Matrix::zeros(0, k);
        for g in self.group.elements().skip(1) {
            stacked = stacked.vstack(&self.block(g, n).sub(&Matrix::identity(k)));
        }
        let local = if stacked.rows() == 0 { (0..k).map(SparseVec::unit).collect() } else { stacked.kernel() };
        local.iter().map(|v| self.carrier.global(v, n)).collect()
    }

    /// Invariants in every occupied degree.
    pub fn all_invariants(&self) -> Vec<SparseVec> {
        self.carrier.occupied_degrees().into_iter().flat_map(|n| self.invariants(n)).collect()
    }

    /// Spanning vectors of the relation space `span{g·v − v}` in degree `n`
    /// (reduced echelon basis, global coordinates).
    pub fn relations(&self, n: i32) -> Vec<SparseVec> {
        let k = self.carrier.dim_in(n);
        let mut cols = Vec::new();
        for g in self.group.elements().skip(1) {
            cols.extend(self.block(g, n).sub(&Matrix::identity(k)).columns());
        }
        if cols.is_empty() {
            return Vec::new();
        }
        Matrix::from_columns(k, &cols).column_space().iter().map(|v| self.carrier.global(v, n)).collect()
    }

    /// Basis vectors of the carrier whose classes form a basis of the
    /// coinvariants `V_G = V / span{g·v − v}` in degree `n`.
    pub fn coinvariants(&self, n: i32) -> Vec<SparseVec> {
        let rel: Vec<SparseVec> = self.relations(n).iter().map(|v| self.carrier.local(v, n)).collect();
        let pivots: Vec<usize> = rel.iter().filter_map(|v| v.support().next()).collect();
        (0..self.carrier.dim_in(n))
            .filter(|i| !pivots.contains(i))
            .map(|i| self.carrier.global(&SparseVec::unit(i), n))
            .collect()
    }

    /// Whether every `ρ(g)` commutes with the linear map `f` (an endomorphism
    /// of the carrier); returns the first offending element.
    pub fn commutes_with(&self, f: &LinearMap) -> Option<usize> {
        let n = self.carrier.dim();
        self.group.elements().find(|&g| {
            (0..n).any(|j| {
                let e = SparseVec::unit(j);
                f.apply(&self.apply(g, &e)) != self.apply(g, &f.apply(&e))
            })
        })
    }

    /// Restricts to an invariant subspace: the matrices of the action on the
    /// spanning vectors of `sub`, over `carrier` (a module with one basis
    /// element per spanning vector).
    pub fn restrict(&self, sub: &Subspace, carrier: GradedModule) -> Result<Self> {
        let k = sub.dim();
        let mut matrices = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let cols = sub
                .vectors()
                .iter()
                .map(|v| {
                    sub.coordinates(&self.apply(g, v)).ok_or_else(|| {
                        Error::structural(format!("subspace is not stable under {}", self.group.name(g)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            matrices.push(Matrix::from_columns(k, &cols));
        }
        GroupRepresentation::new_unchecked(self.group.clone(), carrier, matrices)
    }
}

/// One degree of an [`InvariantHomologyReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantHomologyRow {
    pub degree: i32,
    /// `dim H_n(V^G)`.
    pub homology_of_invariants: usize,
    /// `dim H_n(V)^G`, through the induced action on representatives.
    pub invariants_of_homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantHomologyReport {
    pub rows: Vec<InvariantHomologyRow>,
}

impl InvariantHomologyReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.homology_of_invariants == r.invariants_of_homology)
    }
}

/// The complex of invariants `V^G` with the restricted differential, together
/// with the subspace it lives in.
pub fn invariant_subcomplex(cx: &ChainComplex, rep: &GroupRepresentation) -> Result<(ChainComplex, Subspace)> {
    let sub = Subspace::new(cx.module(), rep.all_invariants())?;
    let module = sub.as_module();
    let images = sub
        .vectors()
        .iter()
        .map(|v| {
            sub.coordinates(&cx.differential().apply(v))
                .ok_or_else(|| Error::structural("the differential does not preserve invariants"))
        })
        .collect::<Result<Vec<_>>>()?;
    let d = LinearMap::new(module.clone(), module, -1, images)?;
    Ok((ChainComplex::new(d)?, sub))
}

/// Matrix of `g` acting on `H_n` in the representative basis.
pub fn induced_on_homology(cx: &ChainComplex, rep: &GroupRepresentation, g: usize, n: i32) -> Result<Matrix> {
    let h = cx.homology(n);
    let cols = h
        .representatives
        .iter()
        .map(|z| h.class_of(&rep.apply(g, z)).map(|c| SparseVec::from_dense(&c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(h.dim(), &cols))
}

/// Computes `dim H_n(V^G)` and `dim H_n(V)^G` by separate routes for each
/// requested degree.
pub fn invariant_homology_check(
    cx: &ChainComplex,
    rep: &GroupRepresentation,
    degrees: impl IntoIterator<Item = i32>,
) -> Result<InvariantHomologyReport> {
    if rep.carrier().dim() != cx.module().dim() {
        return Err(Error::input("representation and complex have different carriers"));
    }
    if let Some(g) = rep.commutes_with(cx.differential()) {
        return Err(Error::structural(format!("{} does not commute with the differential", rep.group().name(g))));
    }
    let (fixed, _) = invariant_subcomplex(cx, rep)?;
    let mut rows = Vec::new();
    for n in degrees {
        let left = fixed.homology(n).dim();
        let hdim = cx.homology(n).dim();
        let mut stacked = Matrix::zeros(0, hdim);
        for g in rep.group().elements().skip(1) {
            stacked = stacked.vstack(&induced_on_homology(cx, rep, g, n)?.sub(&Matrix::identity(hdim)));
        }
        let right = if stacked.rows() == 0 { hdim } else { stacked.kernel().len() };
        rows.push(InvariantHomologyRow { degree: n, homology_of_invariants: left, invariants_of_homology: right });
    }
    Ok(InvariantHomologyReport { rows })
}
