//! `MC(L)` for abelian `L`, realized by normalized cellular cochains:
//! `M_m = Z_0(L ⊗ C^*(Δ^m))` with `D(x⊗c) = ℓ_1(x)⊗c + (−1)^{|x|} x⊗δc` and
//! `|x⊗c| = |x| − dim c`. Faces and degeneracies pull cochains back along the
//! cofaces and codegeneracies of `Δ`.
//!
//! Faces of `Δ^m` are bitmasks over `{0, …, m}`; elements of `M_m` are stored
//! in the ambient basis of degree-0 pairs `(x, F)`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::liealg::{as_shifted, SLInfinityAlgebra};
use crate::qlinalg::{sign, GradedModule, GroupRepresentation, Matrix, SparseVec, Subspace};
use crate::report::CheckReport;

#[derive(Clone, Debug)]
struct Level {
    /// Ambient degree-0 basis: (basis element of L, face mask).
    basis: Vec<(usize, u32)>,
    /// `index[x << (m+1) | mask]`.
    index: Vec<Option<usize>>,
    cycles: Subspace,
    /// Columns of `D` on the ambient basis.
    differential: Vec<SparseVec>,
}

/// A finite simplicial ℚ-module with an optional group action, here the
/// abelian Maurer-Cartan space truncated at level `m_max`.
#[derive(Clone, Debug)]
pub struct SimplicialQModule {
    algebra: SLInfinityAlgebra,
    action: Option<GroupRepresentation>,
    levels: Vec<Level>,
    /// Sparse columns of each group element on `L`.
    action_columns: Vec<Vec<SparseVec>>,
}

fn popcount(mask: u32) -> i32 {
    mask.count_ones() as i32
}

fn mask_label(mask: u32, m: usize) -> String {
    let verts: Vec<String> = (0..=m).filter(|&v| mask >> v & 1 == 1).map(|v| v.to_string()).collect();
    format!("[{}]", verts.join(" "))
}

/// The abelian Maurer-Cartan simplicial module of `l` through level `m_max`.
pub fn abelian_mc_model(
    l: &SLInfinityAlgebra,
    action: Option<&GroupRepresentation>,
    m_max: usize,
) -> Result<SimplicialQModule> {
    let l = as_shifted(l)?;
    if !l.is_abelian() {
        return Err(Error::Hypothesis("the cellular model is only available for abelian algebras".into()));
    }
    if m_max > 12 {
        return Err(Error::Capacity("simplicial levels above 12 are not supported".into()));
    }
    let action = action.map(|a| a.with_carrier(l.carrier().clone())).transpose()?;
    let mut levels = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let width = 1usize << (m + 1);
        let mut basis = Vec::new();
        let mut lower = Vec::new();
        let mut index = vec![None; l.dim() * width];
        let mut lower_index = vec![None; l.dim() * width];
        for x in 0..l.dim() {
            for mask in 1..width as u32 {
                let deg = l.degree(x) - (popcount(mask) - 1);
                if deg == 0 {
                    index[x * width + mask as usize] = Some(basis.len());
                    basis.push((x, mask));
                } else if deg == -1 {
                    lower_index[x * width + mask as usize] = Some(lower.len());
                    lower.push((x, mask));
                }
            }
        }
        // D on the degree-0 basis.
        let mut cols = Vec::with_capacity(basis.len());
        for &(x, mask) in &basis {
            let mut col = SparseVec::new();
            for (y, c) in l.bracket(&[x]).iter() {
                if let Some(r) = lower_index[y * width + mask as usize] {
                    col.add_term(r, c.clone());
                }
            }
            let s = sign(l.degree(x) as i64);
            for v in 0..=m {
                if mask >> v & 1 == 1 {
                    continue;
                }
                let bigger = mask | 1 << v;
                let pos = (bigger & ((1 << v) - 1)).count_ones() as i64;
                if let Some(r) = lower_index[x * width + bigger as usize] {
                    col.add_term(r, &s * sign(pos));
                }
            }
            cols.push(col);
        }
        let d = Matrix::from_columns(lower.len(), &cols);
        let differential = cols;
        let kernel = if basis.is_empty() { Vec::new() } else { d.kernel() };
        let labels: Vec<(String, i32)> =
            basis.iter().map(|&(x, mask)| (format!("{}⊗{}", l.label(x), mask_label(mask, m)), 0)).collect();
        let ambient = GradedModule::new(labels)?;
        let cycles = Subspace::new(&ambient, kernel)?;
        levels.push(Level { basis, index, cycles, differential });
    }
    let action_columns = match &action {
        Some(rep) => rep.group().elements().map(|g| rep.matrix(g).columns()).collect(),
        None => Vec::new(),
    };
    Ok(SimplicialQModule { algebra: l, action, levels, action_columns })
}

impl SimplicialQModule {
    pub fn m_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn algebra(&self) -> &SLInfinityAlgebra {
        &self.algebra
    }

    pub fn action(&self) -> Option<&GroupRepresentation> {
        self.action.as_ref()
    }

    /// `dim M_m`.
    pub fn dim(&self, m: usize) -> usize {
        self.levels[m].cycles.dim()
    }

    /// Dimension of the ambient degree-0 cochains at level `m`.
    pub fn ambient_dim(&self, m: usize) -> usize {
        self.levels[m].basis.len()
    }

    /// Basis of `M_m` in ambient coordinates.
    pub fn basis(&self, m: usize) -> &[SparseVec] {
        self.levels[m].cycles.vectors()
    }

    pub fn labels(&self, m: usize) -> &[String] {
        self.levels[m].cycles.ambient().labels()
    }

    pub fn contains(&self, m: usize, v: &SparseVec) -> bool {
        let level = &self.levels[m];
        let mut dv = SparseVec::new();
        for (i, c) in v.iter() {
            match level.differential.get(i) {
                Some(col) => dv.add_scaled(col, c),
                None => return false,
            }
        }
        dv.is_zero()
    }

    pub fn coordinates(&self, m: usize, v: &SparseVec) -> Option<SparseVec> {
        self.levels[m].cycles.coordinates(v)
    }

    /// Ambient index of `(x, face)` at level `m`, if that pair has degree 0.
    pub fn ambient_index(&self, m: usize, x: usize, mask: u32) -> Option<usize> {
        self.levels[m].index[(x << (m + 1)) | mask as usize]
    }

    pub fn ambient_pair(&self, m: usize, i: usize) -> (usize, u32) {
        self.levels[m].basis[i]
    }

    /// Pulls `v ∈ M_m` back along a monotone map `theta: [k] → [m]`.
    pub fn pullback(&self, m: usize, theta: &[usize], v: &SparseVec) -> SparseVec {
        let k = theta.len() - 1;
        let mut out = SparseVec::new();
        for (i, &(x, mask)) in self.levels[k].basis.iter().enumerate() {
            let mut image = 0u32;
            let mut injective = true;
            for p in 0..=k {
                if mask >> p & 1 == 1 {
                    let bit = 1u32 << theta[p];
                    if image & bit != 0 {
                        injective = false;
                        break;
                    }
                    image |= bit;
                }
            }
            if !injective {
                continue;
            }
            if let Some(j) = self.ambient_index(m, x, image) {
                let c = v.get(j);
                if c != crate::qlinalg::zero() {
                    out.add_term(i, c);
                }
            }
        }
        out
    }

    pub fn face(&self, i: usize, m: usize, v: &SparseVec) -> SparseVec {
        let theta: Vec<usize> = (0..m).map(|p| if p < i { p } else { p + 1 }).collect();
        self.pullback(m, &theta, v)
    }

    pub fn degeneracy(&self, j: usize, m: usize, v: &SparseVec) -> SparseVec {
        let theta: Vec<usize> = (0..=m + 1).map(|p| if p <= j { p } else { p - 1 }).collect();
        self.pullback(m, &theta, v)
    }

    /// `g` acting through `L`.
    pub fn act(&self, g: usize, m: usize, v: &SparseVec) -> SparseVec {
        if self.action.is_none() {
            return v.clone();
        }
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            let (x, mask) = self.levels[m].basis[i];
            for (y, a) in self.action_columns[g][x].iter() {
                let j = self.ambient_index(m, y, mask).expect("the action preserves degrees");
                out.add_term(j, if a.is_one() { c.clone() } else { a * c });
            }
        }
        out
    }

    /// Matrix of `d_i: M_m → M_{m−1}` in the cycle bases.
    pub fn face_matrix(&self, i: usize, m: usize) -> Matrix {
        let cols: Vec<SparseVec> = self
            .basis(m)
            .iter()
            .map(|v| self.coordinates(m - 1, &self.face(i, m, v)).expect("faces preserve cycles"))
            .collect();
        Matrix::from_columns(self.dim(m - 1), &cols)
    }

    /// Matrix of `s_j: M_m → M_{m+1}` in the cycle bases.
    pub fn degeneracy_matrix(&self, j: usize, m: usize) -> Matrix {
        let cols: Vec<SparseVec> = self
            .basis(m)
            .iter()
            .map(|v| self.coordinates(m + 1, &self.degeneracy(j, m, v)).expect("degeneracies preserve cycles"))
            .collect();
        Matrix::from_columns(self.dim(m + 1), &cols)
    }

    /// Simplicial identities, closure of the cycle spaces and equivariance,
    /// checked on every basis vector.
    pub fn check(&self) -> Vec<CheckReport> {
        let top = self.m_max();
        let cases = || (0..=top).flat_map(move |m| (0..self.dim(m)).map(move |b| (m, b)));
        let w = |m: usize, b: usize, i: usize, j: usize| {
            vec![self.basis(m)[b].display_with(self.labels(m)).to_string(), format!("i={i}"), format!("j={j}")]
        };
        let mut reports = Vec::new();
        reports.push(CheckReport::run("M closed under faces and degeneracies", cases(), |(m, b)| {
            let v = &self.basis(m)[b];
            for i in 0..=m {
                if m >= 1 && !self.contains(m - 1, &self.face(i, m, v)) {
                    return Err((Some(m), w(m, b, i, 0), "face leaves the cycles".into()));
                }
                if m < top && !self.contains(m + 1, &self.degeneracy(i, m, v)) {
                    return Err((Some(m), w(m, b, 0, i), "degeneracy leaves the cycles".into()));
                }
            }
            Ok(())
        }));
        reports.push(CheckReport::run("M simplicial identities", cases(), |(m, b)| {
            let v = &self.basis(m)[b];
            for j in 0..=m {
                for i in 0..j {
                    if m >= 2 && self.face(i, m - 1, &self.face(j, m, v)) != self.face(j - 1, m - 1, &self.face(i, m, v)) {
                        return Err((Some(m), w(m, b, i, j), "d_i d_j ≠ d_{j-1} d_i".into()));
                    }
                }
                if m < top {
                    let s = self.degeneracy(j, m, v);
                    for i in 0..=m + 1 {
                        let lhs = self.face(i, m + 1, &s);
                        let rhs = if i < j {
                            self.degeneracy(j - 1, m - 1, &self.face(i, m, v))
                        } else if i == j || i == j + 1 {
                            v.clone()
                        } else {
                            self.degeneracy(j, m - 1, &self.face(i - 1, m, v))
                        };
                        if lhs != rhs {
                            return Err((Some(m), w(m, b, i, j), "d_i s_j is wrong".into()));
                        }
                    }
                }
                if m + 2 <= top {
                    for i in 0..=j {
                        let lhs = self.degeneracy(i, m + 1, &self.degeneracy(j, m, v));
                        let rhs = self.degeneracy(j + 1, m + 1, &self.degeneracy(i, m, v));
                        if lhs != rhs {
                            return Err((Some(m), w(m, b, i, j), "s_i s_j ≠ s_{j+1} s_i".into()));
                        }
                    }
                }
            }
            Ok(())
        }));
        if let Some(rep) = &self.action {
            reports.push(CheckReport::run("M equivariance", cases(), |(m, b)| {
                let v = &self.basis(m)[b];
                for g in rep.group().elements() {
                    let gv = self.act(g, m, v);
                    if !self.contains(m, &gv) {
                        return Err((Some(m), w(m, b, g, 0), "action leaves the cycles".into()));
                    }
                    for i in 0..=m {
                        if m >= 1 && self.face(i, m, &gv) != self.act(g, m - 1, &self.face(i, m, v)) {
                            return Err((Some(m), w(m, b, i, 0), format!("d_{i} not equivariant")));
                        }
                        if m < top && self.degeneracy(i, m, &gv) != self.act(g, m + 1, &self.degeneracy(i, m, v)) {
                            return Err((Some(m), w(m, b, 0, i), format!("s_{i} not equivariant")));
                        }
                    }
                }
                Ok(())
            }));
        }
        reports
    }
}
