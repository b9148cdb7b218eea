//! The bar model of `EG`: n-simplices are tuples `(g_n, …, g_0)`.
//!
//! Tuples are stored in that order, so `t[0] = g_n` and `t[n] = g_0`. Faces:
//! `d_0` drops `g_0`, and `d_i` for `1 ≤ i ≤ n` replaces `g_i, g_{i−1}` by the
//! product `g_i·g_{i−1}`. The degeneracy `s_j` inserts `e` so that it becomes
//! the new `g_j`; then `d_j s_j = d_{j+1} s_j = id`. `G` acts by left
//! multiplication on `g_n`.
//!
//! Equivalently, `(g_n, …, g_0)` is the simplex with vertices
//! `v_i = g_n ⋯ g_i`, faces delete vertices and degeneracies repeat them.

use crate::error::{Error, Result};
use crate::qlinalg::FiniteGroup;
use crate::report::CheckReport;

/// Default bound on the number of simplices enumerated at the top level.
pub const DEFAULT_MAX_CELLS: usize = 200_000;

#[derive(Clone, Debug)]
pub struct EGComplex {
    group: FiniteGroup,
    m_max: usize,
}

pub type Tuple = Vec<usize>;

impl EGComplex {
    /// Refuses when the top level would hold more than `max_cells` tuples.
    pub fn new(group: FiniteGroup, m_max: usize, max_cells: usize) -> Result<Self> {
        let cells = (group.order() as f64).powi(m_max as i32 + 1);
        if cells > max_cells as f64 {
            return Err(Error::Capacity(format!(
                "EG at level {m_max} has {cells} simplices, above the cap of {max_cells}"
            )));
        }
        Ok(EGComplex { group, m_max })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// All tuples at level `n`, in lexicographic order of `(g_n, …, g_0)`.
    pub fn level(&self, n: usize) -> Vec<Tuple> {
        let k = self.group.order();
        let mut out = vec![Vec::new()];
        for _ in 0..=n {
            out = out
                .into_iter()
                .flat_map(|t: Tuple| {
                    (0..k).map(move |g| {
                        let mut t = t.clone();
                        t.push(g);
                        t
                    })
                })
                .collect();
        }
        out
    }

    pub fn face(&self, i: usize, t: &[usize]) -> Tuple {
        let n = t.len() - 1;
        assert!(n >= 1 && i <= n, "face d_{i} on a level-{n} tuple");
        let mut out = t.to_vec();
        if i == 0 {
            out.pop();
        } else {
            let p = n - i;
            out[p] = self.group.mul(t[p], t[p + 1]);
            out.remove(p + 1);
        }
        out
    }

    pub fn degeneracy(&self, j: usize, t: &[usize]) -> Tuple {
        let n = t.len() - 1;
        assert!(j <= n, "degeneracy s_{j} on a level-{n} tuple");
        let mut out = t.to_vec();
        out.insert(n + 1 - j, self.group.identity());
        out
    }

    pub fn act(&self, g: usize, t: &[usize]) -> Tuple {
        let mut out = t.to_vec();
        out[0] = self.group.mul(g, t[0]);
        out
    }

    /// `v_0, …, v_n` with `v_i = g_n ⋯ g_i`.
    pub fn vertices(&self, t: &[usize]) -> Vec<usize> {
        let n = t.len() - 1;
        let mut v = vec![0; n + 1];
        let mut acc = self.group.identity();
        for i in (0..=n).rev() {
            // g_i sits at index n − i.
            acc = self.group.mul(acc, t[n - i]);
            v[i] = acc;
        }
        v
    }

    /// Inverse of [`EGComplex::vertices`].
    pub fn from_vertices(&self, v: &[usize]) -> Tuple {
        let n = v.len() - 1;
        (0..=n)
            .rev()
            .map(|i| if i == n { v[n] } else { self.group.mul(self.group.inverse(v[i + 1]), v[i]) })
            .collect()
    }

    /// The totally degenerate tuple `(g, e, …, e)` at level `m`.
    pub fn corner(&self, g: usize, m: usize) -> Tuple {
        let mut t = vec![self.group.identity(); m + 1];
        t[0] = g;
        t
    }

    pub fn render(&self, t: &[usize]) -> String {
        format!("({})", t.iter().map(|&g| self.group.name(g)).collect::<Vec<_>>().join(", "))
    }

    /// The five families of simplicial identities, equivariance of every
    /// structure map, and freeness of the action, on all tuples up to `m_max`.
    pub fn check(&self) -> Vec<CheckReport> {
        let mut reports = Vec::new();
        let w = |t: &[usize], i: usize, j: usize| vec![self.render(t), format!("i={i}"), format!("j={j}")];
        let levels: Vec<(usize, Vec<Tuple>)> = (0..=self.m_max).map(|n| (n, self.level(n))).collect();
        let tuples = || levels.iter().flat_map(|(n, ts)| ts.iter().map(move |t| (*n, t)));

        reports.push(CheckReport::run("EG d_i d_j = d_{j-1} d_i", tuples().filter(|(n, _)| *n >= 2), |(n, t)| {
            for j in 1..=n {
                for i in 0..j {
                    if self.face(i, &self.face(j, t)) != self.face(j - 1, &self.face(i, t)) {
                        return Err((Some(n), w(t, i, j), "faces do not commute".into()));
                    }
                }
            }
            Ok(())
        }));
        let below_top = || tuples().filter(|(n, _)| *n < self.m_max);
        reports.push(CheckReport::run("EG d_i s_j", below_top(), |(n, t)| {
            for j in 0..=n {
                let s = self.degeneracy(j, t);
                for i in 0..=n + 1 {
                    let lhs = self.face(i, &s);
                    let rhs = if i < j {
                        self.degeneracy(j - 1, &self.face(i, t))
                    } else if i == j || i == j + 1 {
                        t.clone()
                    } else {
                        self.degeneracy(j, &self.face(i - 1, t))
                    };
                    if lhs != rhs {
                        return Err((Some(n), w(t, i, j), "face of a degeneracy is wrong".into()));
                    }
                }
            }
            Ok(())
        }));
        reports.push(CheckReport::run("EG s_i s_j = s_{j+1} s_i", tuples().filter(|(n, _)| n + 2 <= self.m_max), |(n, t)| {
            for j in 0..=n {
                for i in 0..=j {
                    if self.degeneracy(i, &self.degeneracy(j, t)) != self.degeneracy(j + 1, &self.degeneracy(i, t)) {
                        return Err((Some(n), w(t, i, j), "degeneracies do not commute".into()));
                    }
                }
            }
            Ok(())
        }));
        let group = &self.group;
        reports.push(CheckReport::run("EG equivariance", tuples(), |(n, t)| {
            for g in group.elements() {
                let gt = self.act(g, t);
                for i in 0..=n {
                    if n >= 1 && self.face(i, &gt) != self.act(g, &self.face(i, t)) {
                        return Err((Some(n), vec![group.name(g).to_string(), self.render(t)], format!("d_{i} not equivariant")));
                    }
                    if self.degeneracy(i, &gt) != self.act(g, &self.degeneracy(i, t)) {
                        return Err((Some(n), vec![group.name(g).to_string(), self.render(t)], format!("s_{i} not equivariant")));
                    }
                }
            }
            Ok(())
        }));
        reports.push(CheckReport::run("EG free action", tuples(), |(n, t)| {
            for g in group.elements().skip(1) {
                if self.act(g, t) == *t {
                    return Err((Some(n), vec![group.name(g).to_string(), self.render(t)], "nontrivial stabilizer".into()));
                }
            }
            Ok(())
        }));
        reports
    }
}

/// `EG` with the default enumeration cap.
pub fn build_eg(group: FiniteGroup, m_max: usize) -> Result<EGComplex> {
    EGComplex::new(group, m_max, DEFAULT_MAX_CELLS)
}
