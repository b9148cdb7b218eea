//! Equivariant maps `Δ^n × EG → M` into an abelian Maurer-Cartan module, and
//! the retraction data `p`, `i`, `f^Σ`, `H`, `K`.
//!
//! An m-simplex of `Δ^n × EG` is a pair `(σ, t)` of a monotone map
//! `σ: [m] → [n]` and a tuple `t` of level m. Maps are stored as tables on
//! all such pairs up to the level cap, degenerate ones included.
//!
//! `H(t, k)` for an m-simplex `t` and the simplex of `Δ^1` with `k` zeros
//! followed by ones is the average over `ρ` of `f(g_m, …, g_k, ρ, e, …, e)`
//! for `k ≥ 1`, and `f(t)` for `k = 0`. With `k = m + 1` this is the average
//! of `f(ρ, e, …, e)`. `K(F, τ)(σ, t)` applies the same formula to `F(σ, −)`
//! with `k` the number of zeros of `τ∘σ`.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::GSLInfinityAlgebra;
use crate::qlinalg::{sign, FiniteGroup, Scalar, SparseVec};
use crate::report::CheckReport;

use super::eg::{EGComplex, Tuple};
use super::model::{abelian_mc_model, SimplicialQModule};

/// An n-simplex of `Map_G(Δ^n × EG, M)`: values on every `(σ, t)` up to the
/// level cap. `n = 0` gives a G-map `EG → M`.
#[derive(Clone, Debug, PartialEq)]
pub struct GSimplicialMap {
    n: usize,
    levels: Vec<HashMap<(Vec<usize>, Tuple), SparseVec>>,
}

/// Non-decreasing maps `[m] → [n]`.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
}

fn delete(seq: &[usize], i: usize) -> Vec<usize> {
    let mut s = seq.to_vec();
    s.remove(i);
    s
}

fn repeat(seq: &[usize], j: usize) -> Vec<usize> {
    let mut s = seq.to_vec();
    s.insert(j, seq[j]);
    s
}

impl GSimplicialMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn get(&self, sigma: &[usize], t: &[usize]) -> &SparseVec {
        let m = t.len() - 1;
        self.levels[m].get(&(sigma.to_vec(), t.to_vec())).expect("simplex in table")
    }

    /// Value on `t` for a map out of `EG` alone.
    pub fn at(&self, t: &[usize]) -> &SparseVec {
        self.get(&vec![0; t.len()], t)
    }

    fn tabulate(eg: &EGComplex, n: usize, m_max: usize, mut value: impl FnMut(&[usize], &[usize]) -> SparseVec) -> Self {
        let mut levels = Vec::with_capacity(m_max + 1);
        for m in 0..=m_max {
            let tuples = eg.level(m);
            let mut table = HashMap::new();
            for sigma in monotone_maps(m, n) {
                for t in &tuples {
                    let v = value(&sigma, t);
                    table.insert((sigma.clone(), t.clone()), v);
                }
            }
            levels.push(table);
        }
        GSimplicialMap { n, levels }
    }

    /// `d_i` in the mapping space: precompose with the coface `[n−1] → [n]`.
    pub fn face(&self, eg: &EGComplex, i: usize) -> Self {
        assert!(self.n >= 1);
        GSimplicialMap::tabulate(eg, self.n - 1, self.m_max(), |sigma, t| {
            let s: Vec<usize> = sigma.iter().map(|&v| if v < i { v } else { v + 1 }).collect();
            self.get(&s, t).clone()
        })
    }

    /// `s_j` in the mapping space: precompose with the codegeneracy `[n+1] → [n]`.
    pub fn degeneracy(&self, eg: &EGComplex, j: usize) -> Self {
        GSimplicialMap::tabulate(eg, self.n + 1, self.m_max(), |sigma, t| {
            let s: Vec<usize> = sigma.iter().map(|&v| if v <= j { v } else { v - 1 }).collect();
            self.get(&s, t).clone()
        })
    }
}

/// A random G-equivariant n-simplex of `Map_G(Δ^n × EG, M)`.
///
/// It is the pullback of the cocycle `ω = D α` on `Δ^n × EG`, where `α` is a
/// random cochain of total degree 1 averaged over `G`. Every such `ω` is
/// automatically a simplicial map; averaging makes it equivariant.
pub fn random_map(eg: &EGComplex, model: &SimplicialQModule, n: usize, rng: &mut impl Rng) -> GSimplicialMap {
    let l = model.algebra();
    let group = eg.group();
    let order = group.order();
    let m_max = model.m_max().min(eg.m_max());
    // Vertices of Δ^n × EG are (a, g) encoded as a·|G| + g.
    let act = |g: usize, seq: &[usize]| -> Vec<usize> {
        seq.iter().map(|&v| (v / order) * order + group.mul(g, v % order)).collect()
    };
    let mut alpha: HashMap<Vec<usize>, SparseVec> = HashMap::new();
    let mut raw = |seq: &[usize], rng: &mut dyn rand::RngCore| -> SparseVec {
        alpha
            .entry(seq.to_vec())
            .or_insert_with(|| {
                let k = seq.len() as i32 - 1;
                (0..l.dim())
                    .filter(|&x| l.degree(x) == k + 1)
                    .map(|x| (x, Scalar::from_integer(rng.gen_range(-2i64..=2).into())))
                    .collect()
            })
            .clone()
    };
    let inv_order = Scalar::new(1.into(), (order as i64).into());
    let mut averaged: HashMap<Vec<usize>, SparseVec> = HashMap::new();
    let mut alpha_avg = |seq: &[usize], rng: &mut dyn rand::RngCore| -> SparseVec {
        if let Some(v) = averaged.get(seq) {
            return v.clone();
        }
        let mut out = SparseVec::new();
        if let Some(rep) = model.action() {
            for g in group.elements() {
                let pre = act(group.inverse(g), seq);
                out.add_scaled(&rep.apply(g, &raw(&pre, rng)), &inv_order);
            }
        } else {
            for g in group.elements() {
                out.add_scaled(&raw(&act(group.inverse(g), seq), rng), &inv_order);
            }
        }
        averaged.insert(seq.to_vec(), out.clone());
        out
    };
    let nondegenerate = |seq: &[usize]| seq.windows(2).all(|w| w[0] != w[1]);
    let mut omega_cache: HashMap<Vec<usize>, SparseVec> = HashMap::new();
    let mut omega = |seq: &[usize], rng: &mut dyn rand::RngCore| -> SparseVec {
        if let Some(v) = omega_cache.get(seq) {
            return v.clone();
        }
        let k = seq.len() - 1;
        let mut out = l.eval(&[&alpha_avg(seq, rng)]);
        let s = sign(k as i64);
        for i in 0..=k {
            if k == 0 {
                break;
            }
            let face = delete(seq, i);
            if nondegenerate(&face) {
                out.add_scaled(&alpha_avg(&face, rng), &(&s * sign(i as i64)));
            }
        }
        omega_cache.insert(seq.to_vec(), out.clone());
        out
    };
    GSimplicialMap::tabulate(eg, n, m_max, |sigma, t| {
        let m = t.len() - 1;
        let verts = eg.vertices(t);
        let seq: Vec<usize> = (0..=m).map(|p| sigma[p] * order + verts[p]).collect();
        let mut value = SparseVec::new();
        for mask in 1u32..(1 << (m + 1)) {
            let sub: Vec<usize> = (0..=m).filter(|&p| mask >> p & 1 == 1).map(|p| seq[p]).collect();
            if !nondegenerate(&sub) {
                continue;
            }
            let w = omega(&sub, rng);
            for (x, c) in w.iter() {
                if let Some(i) = model.ambient_index(m, x, mask) {
                    value.add_term(i, c.clone());
                }
            }
        }
        value
    })
}

/// Structural checks for a table: values are cycles, faces and degeneracies
/// of `Δ^n × EG` are respected, and the map is equivariant.
pub fn check_map(name: &str, eg: &EGComplex, model: &SimplicialQModule, f: &GSimplicialMap) -> Vec<CheckReport> {
    let top = f.m_max();
    let cases: Vec<(Vec<usize>, Tuple)> =
        (0..=top).flat_map(|m| f.levels[m].keys().cloned().collect::<Vec<_>>()).collect();
    let witness = |sigma: &[usize], t: &[usize]| vec![format!("σ={sigma:?}"), eg.render(t)];
    let mut reports = Vec::new();
    reports.push(CheckReport::run(&format!("{name}: simplicial"), cases.iter(), |(sigma, t)| {
        let m = t.len() - 1;
        let v = f.get(sigma, t);
        if !model.contains(m, v) {
            return Err((Some(m), witness(sigma, t), "value is not a cycle".into()));
        }
        for i in 0..=m {
            if m >= 1 && f.get(&delete(sigma, i), &eg.face(i, t)) != &model.face(i, m, v) {
                return Err((Some(m), witness(sigma, t), format!("d_{i} not respected")));
            }
            if m < top && f.get(&repeat(sigma, i), &eg.degeneracy(i, t)) != &model.degeneracy(i, m, v) {
                return Err((Some(m), witness(sigma, t), format!("s_{i} not respected")));
            }
        }
        Ok(())
    }));
    // Generators suffice once the action on both sides is a group action.
    let gens = eg.group().generators();
    reports.push(CheckReport::run(&format!("{name}: equivariant"), cases.iter(), |(sigma, t)| {
        let m = t.len() - 1;
        for &g in &gens {
            if f.get(sigma, &eg.act(g, t)) != &model.act(g, m, f.get(sigma, t)) {
                let mut w = witness(sigma, t);
                w.push(eg.group().name(g).to_string());
                return Err((Some(m), w, "f(g·t) ≠ g·f(t)".into()));
            }
        }
        Ok(())
    }));
    reports
}

fn average(eg: &EGComplex, mut f: impl FnMut(usize) -> SparseVec) -> SparseVec {
    let order = eg.group().order();
    let c = Scalar::new(1.into(), (order as i64).into());
    let mut out = SparseVec::new();
    for g in eg.group().elements() {
        out.add_scaled(&f(g), &c);
    }
    out
}

/// `(g_m, …, g_k, ρ, e, …, e)` for `1 ≤ k ≤ m + 1`.
fn cylinder_tuple(eg: &EGComplex, t: &[usize], k: usize, rho: usize) -> Tuple {
    let m = t.len() - 1;
    let mut out: Tuple = t[..m + 1 - k].to_vec();
    out.push(rho);
    out.resize(m + 1, eg.group().identity());
    out
}

/// Deliberate mistakes for testing that the verifier notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Flip the sign of the averaged term of `H` strictly inside the cylinder.
    HSign,
}

fn h_value(eg: &EGComplex, f: impl Fn(&[usize]) -> SparseVec, t: &[usize], k: usize, fault: Option<Fault>) -> SparseVec {
    let m = t.len() - 1;
    if k == 0 {
        return f(t);
    }
    let v = average(eg, |rho| f(&cylinder_tuple(eg, t, k, rho)));
    if fault == Some(Fault::HSign) && k <= m {
        v.neg()
    } else {
        v
    }
}

/// `f^Σ(σ, t)`: the average of `f(σ, (ρ, e, …, e))`. For a map out of `EG`
/// this is the constant map at the averaged vertex value; in general it is
/// `i(p(f))`.
pub fn averaged_symmetrization(eg: &EGComplex, f: &GSimplicialMap) -> GSimplicialMap {
    GSimplicialMap::tabulate(eg, f.n, f.m_max(), |sigma, t| {
        let m = t.len() - 1;
        average(eg, |rho| f.get(sigma, &eg.corner(rho, m)).clone())
    })
}

/// `p(F) ∈ M_n^G`: the average of `F(id, (ρ, e, …, e))`.
pub fn retraction_p(eg: &EGComplex, f: &GSimplicialMap) -> SparseVec {
    let id: Vec<usize> = (0..=f.n).collect();
    average(eg, |rho| f.get(&id, &eg.corner(rho, f.n)).clone())
}

/// `i(c)`: the map `(σ, t) ↦ σ^* c`, constant along `EG`.
pub fn inclusion_i(eg: &EGComplex, model: &SimplicialQModule, n: usize, c: &SparseVec) -> GSimplicialMap {
    GSimplicialMap::tabulate(eg, n, model.m_max().min(eg.m_max()), |sigma, _| model.pullback(n, sigma, c))
}

/// `H(f)` on `EG × Δ^1` for a map `f` out of `EG`: `levels[m][(t, k)]`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub levels: Vec<HashMap<(Tuple, usize), SparseVec>>,
}

pub fn homotopy_h(eg: &EGComplex, f: &GSimplicialMap, fault: Option<Fault>) -> Homotopy {
    assert_eq!(f.n, 0, "H is defined for maps out of EG");
    let mut levels = Vec::new();
    for m in 0..=f.m_max() {
        let mut table = HashMap::new();
        for t in eg.level(m) {
            for k in 0..=m + 1 {
                let v = h_value(eg, |s| f.at(s).clone(), &t, k, fault);
                table.insert((t.clone(), k), v);
            }
        }
        levels.push(table);
    }
    Homotopy { levels }
}

/// `H` is a G-simplicial map `EG × Δ^1 → M` with `H(−, 0) = f^Σ` and
/// `H(−, 1) = f`.
pub fn check_h(eg: &EGComplex, model: &SimplicialQModule, f: &GSimplicialMap, h: &Homotopy) -> Vec<CheckReport> {
    let top = h.levels.len() - 1;
    let fs = averaged_symmetrization(eg, f);
    let cases: Vec<(Tuple, usize)> = (0..=top).flat_map(|m| h.levels[m].keys().cloned().collect::<Vec<_>>()).collect();
    let get = |t: &[usize], k: usize| &h.levels[t.len() - 1][&(t.to_vec(), k)];
    let witness = |t: &[usize], k: usize| vec![eg.render(t), format!("k={k}")];
    let mut reports = Vec::new();
    reports.push(CheckReport::run("H: simplicial", cases.iter(), |(t, k)| {
        let (m, k) = (t.len() - 1, *k);
        let v = get(t, k);
        for i in 0..=m {
            if m >= 1 {
                let kk = if i < k { k - 1 } else { k };
                if get(&eg.face(i, t), kk) != &model.face(i, m, v) {
                    return Err((Some(m), witness(t, k), format!("d_{i} not respected")));
                }
            }
            if m < top {
                let kk = if i < k { k + 1 } else { k };
                if get(&eg.degeneracy(i, t), kk) != &model.degeneracy(i, m, v) {
                    return Err((Some(m), witness(t, k), format!("s_{i} not respected")));
                }
            }
        }
        Ok(())
    }));
    let gens = eg.group().generators();
    reports.push(CheckReport::run("H: equivariant", cases.iter(), |(t, k)| {
        let m = t.len() - 1;
        for &g in &gens {
            if get(&eg.act(g, t), *k) != &model.act(g, m, get(t, *k)) {
                return Err((Some(m), witness(t, *k), format!("not equivariant under {}", eg.group().name(g))));
            }
        }
        Ok(())
    }));
    reports.push(CheckReport::run("H(-,0) = f^Σ and H(-,1) = f", cases.iter().filter(|(t, k)| *k == 0 || *k == t.len()), |(t, k)| {
        let m = t.len() - 1;
        let expected = if *k == 0 { f.at(t) } else { fs.at(t) };
        if get(t, *k) != expected {
            return Err((Some(m), witness(t, *k), "endpoint mismatch".into()));
        }
        Ok(())
    }));
    reports
}

/// `K(F, τ)` for `τ` a simplex of `Δ^1` at level `F.n()`, given as its 0/1
/// vertex sequence.
pub fn homotopy_k(eg: &EGComplex, f: &GSimplicialMap, tau: &[usize], fault: Option<Fault>) -> GSimplicialMap {
    assert_eq!(tau.len(), f.n + 1);
    GSimplicialMap::tabulate(eg, f.n, f.m_max(), |sigma, t| {
        let k = sigma.iter().filter(|&&p| tau[p] == 0).count();
        h_value(eg, |s| f.get(sigma, s).clone(), t, k, fault)
    })
}

/// Outcome of [`verify_retraction`].
#[derive(Clone, Debug, Serialize)]
pub struct RetractionReport {
    pub group: String,
    pub m_max: usize,
    pub n_max: usize,
    pub target: String,
    pub checks: Vec<CheckReport>,
}

impl RetractionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed())
    }
}

impl fmt::Display for RetractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "retraction checks for G = {}, levels ≤ {}, simplices of Δ^n for n ≤ {}, target {}",
            self.group, self.m_max, self.n_max, self.target)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        write!(f, "{}", if self.passed() { "all checks pass" } else { "FAILED" })
    }
}

/// Options for [`verify_retraction`].
#[derive(Clone, Debug)]
pub struct RetractionOptions {
    pub m_max: usize,
    /// Largest n for which n-simplices of the homotopy fixed points are sampled.
    pub n_max: usize,
    pub samples: usize,
    pub fault: Option<Fault>,
    pub max_cells: usize,
}

impl Default for RetractionOptions {
    fn default() -> Self {
        RetractionOptions { m_max: 3, n_max: 2, samples: 1, fault: None, max_cells: super::eg::DEFAULT_MAX_CELLS }
    }
}

/// Runs every identity suite: EG, the target module, random maps `f` with
/// `H(f)`, and random simplices `F` with `p`, `i`, `K`.
pub fn verify_retraction(
    target: &GSLInfinityAlgebra,
    options: &RetractionOptions,
    rng: &mut impl Rng,
) -> Result<RetractionReport> {
    let group: FiniteGroup = target.action.group().clone();
    let eg = EGComplex::new(group.clone(), options.m_max, options.max_cells)?;
    let model = abelian_mc_model(&target.algebra, Some(&target.action), options.m_max)?;
    if let Some(msg) = target.action.law_violation() {
        return Err(Error::Hypothesis(format!("the target action is not a group action: {msg}")));
    }
    let cells = (group.order() as f64).powi(options.m_max as i32 + 1)
        * monotone_maps(options.m_max, options.n_max).len() as f64;
    if cells > options.max_cells as f64 * 4.0 {
        return Err(Error::Capacity(format!("{cells} simplices of Δ^n × EG exceed the cap")));
    }
    let mut checks = eg.check();
    checks.extend(model.check());
    let fault = options.fault;

    for _ in 0..options.samples {
        let f = random_map(&eg, &model, 0, rng);
        checks.extend(check_map("f", &eg, &model, &f));
        let fs = averaged_symmetrization(&eg, &f);
        checks.extend(check_map("f^Σ", &eg, &model, &fs));
        let constant = (0..=fs.m_max()).all(|m| {
            let tuples = eg.level(m);
            tuples.iter().all(|t| fs.at(t) == fs.at(&tuples[0]))
        });
        checks.push(if constant {
            CheckReport::pass("f^Σ constant along EG", 1)
        } else {
            CheckReport::fail("f^Σ constant along EG", None, Vec::new(), "values differ", 1)
        });
        let h = homotopy_h(&eg, &f, fault);
        checks.extend(check_h(&eg, &model, &f, &h));
    }

    for n in 0..=options.n_max.min(options.m_max) {
        for _ in 0..options.samples {
            let big = random_map(&eg, &model, n, rng);
            checks.extend(check_map(&format!("F (n={n})"), &eg, &model, &big));
            let p = retraction_p(&eg, &big);
            let invariant = group.elements().all(|g| model.act(g, n, &p) == p);
            checks.push(verdict(&format!("p(F) invariant (n={n})"), invariant, n));
            let ip = inclusion_i(&eg, &model, n, &p);
            checks.push(verdict(&format!("i∘p = f^Σ (n={n})"), ip == averaged_symmetrization(&eg, &big), n));
            checks.push(verdict(&format!("p∘i = id (n={n})"), retraction_p(&eg, &ip) == p, n));
            if n >= 1 {
                let ok = (0..=n).all(|i| retraction_p(&eg, &big.face(&eg, i)) == model.face(i, n, &p));
                checks.push(verdict(&format!("p commutes with faces (n={n})"), ok, n));
            }
            if n < options.m_max {
                let ok = (0..=n).all(|j| retraction_p(&eg, &big.degeneracy(&eg, j)) == model.degeneracy(j, n, &p));
                checks.push(verdict(&format!("p commutes with degeneracies (n={n})"), ok, n));
            }
            for tau in monotone_maps(n, 1) {
                let k = homotopy_k(&eg, &big, &tau, fault);
                let name = format!("K(F, {tau:?})");
                checks.extend(check_map(&name, &eg, &model, &k));
                if tau.iter().all(|&x| x == 0) {
                    checks.push(verdict("K(-,0) = i∘p", k == ip, n));
                }
                if tau.iter().all(|&x| x == 1) {
                    checks.push(verdict("K(-,1) = id", k == big, n));
                }
                if n >= 1 {
                    let ok = (0..=n).all(|i| homotopy_k(&eg, &big.face(&eg, i), &delete(&tau, i), fault) == k.face(&eg, i));
                    checks.push(verdict(&format!("{name} commutes with faces"), ok, n));
                }
                if n < options.n_max {
                    let ok = (0..=n)
                        .all(|j| homotopy_k(&eg, &big.degeneracy(&eg, j), &repeat(&tau, j), fault) == k.degeneracy(&eg, j));
                    checks.push(verdict(&format!("{name} commutes with degeneracies"), ok, n));
                }
            }
        }
    }
    Ok(RetractionReport {
        group: format!("order {}", group.order()),
        m_max: options.m_max,
        n_max: options.n_max,
        target: target.algebra.carrier().labels().join(", "),
        checks,
    })
}

fn verdict(name: &str, ok: bool, n: usize) -> CheckReport {
    if ok {
        CheckReport::pass(name, 1)
    } else {
        CheckReport::fail(name, Some(n), Vec::new(), "tables differ", 1)
    }
}
