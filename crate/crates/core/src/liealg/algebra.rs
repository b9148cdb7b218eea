use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{sign, ChainComplex, GradedModule, LinearMap, Scalar, SparseVec};

/// Which sign and degree conventions a bracket table follows.
///
/// `Shifted`: every ℓ_n has degree −1 and is graded symmetric.
/// `DgLie`: ℓ_1 = d of degree −1 and a degree 0 graded antisymmetric bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Shifted,
    #[serde(rename = "dglie")]
    DgLie,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Shifted => "shifted",
            Convention::DgLie => "dglie",
        })
    }
}

/// A finite-dimensional (shifted) L∞ algebra given by bracket tables on basis
/// tuples.
///
/// Entries are normally stored on non-decreasing index tuples; other orders
/// are obtained by the Koszul sign rule. An entry stored on a non-sorted key
/// takes precedence for that exact key, which is how faults are injected and
/// then caught by `check_symmetry`.
///
/// Truncation: brackets whose output would exceed `degree_cap` or
/// `weight_cap` are absent. `complete_through` records up to which degree the
/// carrier agrees with the untruncated algebra it stands for (`None`: no
/// truncation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SLInfinityAlgebra {
    carrier: GradedModule,
    weights: Vec<u32>,
    convention: Convention,
    table: BTreeMap<Vec<usize>, SparseVec>,
    arity_cap: usize,
    degree_cap: Option<i32>,
    weight_cap: Option<u32>,
    complete_through: Option<i32>,
}

impl SLInfinityAlgebra {
    /// Builds an algebra and checks indices, arities and degrees of the given
    /// entries. Zero entries are dropped; a repeated key is an error.
    pub fn new(
        carrier: GradedModule,
        weights: Vec<u32>,
        convention: Convention,
        entries: Vec<(Vec<usize>, SparseVec)>,
        arity_cap: usize,
    ) -> Result<Self> {
        if weights.len() != carrier.dim() {
            return Err(Error::input(format!("{} weights for {} basis elements", weights.len(), carrier.dim())));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::input(format!("filtration weight of {} must be positive", carrier.label(i))));
        }
        if convention == Convention::DgLie && arity_cap > 2 {
            return Err(Error::input("a dg Lie algebra has brackets of arity at most 2"));
        }
        let mut alg = SLInfinityAlgebra {
            carrier,
            weights,
            convention,
            table: BTreeMap::new(),
            arity_cap,
            degree_cap: None,
            weight_cap: None,
            complete_through: None,
        };
        for (key, value) in entries {
            alg.validate_entry(&key, &value)?;
            if alg.table.contains_key(&key) {
                return Err(Error::input(format!("bracket entry on ({}) given twice", alg.tuple_labels(&key).join(", "))));
            }
            if !value.is_zero() {
                alg.table.insert(key, value);
            }
        }
        Ok(alg)
    }

    /// The algebra with the same carrier and no brackets at all.
    pub fn abelian(carrier: GradedModule, convention: Convention) -> Self {
        let weights = vec![1; carrier.dim()];
        SLInfinityAlgebra::new(carrier, weights, convention, Vec::new(), 1).expect("abelian algebra is valid")
    }

    fn validate_entry(&self, key: &[usize], value: &SparseVec) -> Result<()> {
        if key.is_empty() || key.len() > self.arity_cap {
            return Err(Error::input(format!("bracket arity {} outside 1..={}", key.len(), self.arity_cap)));
        }
        if let Some(&i) = key.iter().find(|&&i| i >= self.carrier.dim()) {
            return Err(Error::input(format!("bracket argument index {i} out of range")));
        }
        let deg = self.output_degree(key);
        for j in value.support() {
            if j >= self.carrier.dim() {
                return Err(Error::input(format!("bracket value index {j} out of range")));
            }
            if self.carrier.degree(j) != deg {
                return Err(Error::input(format!(
                    "bracket on ({}) must land in degree {deg}, but has component {} of degree {}",
                    self.tuple_labels(key).join(", "),
                    self.carrier.label(j),
                    self.carrier.degree(j)
                )));
            }
        }
        Ok(())
    }

    pub fn with_degree_cap(mut self, cap: Option<i32>) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn with_weight_cap(mut self, cap: Option<u32>) -> Self {
        self.weight_cap = cap;
        self
    }

    pub fn with_complete_through(mut self, d: Option<i32>) -> Self {
        self.complete_through = d;
        self
    }

    /// Overwrites (or removes, for a zero value) the entry stored on exactly
    /// this key. Only degrees and indices are validated.
    pub fn set_entry(&mut self, key: Vec<usize>, value: SparseVec) -> Result<()> {
        if key.len() > self.arity_cap {
            self.arity_cap = key.len();
        }
        self.validate_entry(&key, &value)?;
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
        Ok(())
    }

    pub fn carrier(&self) -> &GradedModule {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.carrier.degree(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.carrier.label(i)
    }

    pub fn labels(&self) -> &[String] {
        self.carrier.labels()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    pub fn degree_cap(&self) -> Option<i32> {
        self.degree_cap
    }

    pub fn weight_cap(&self) -> Option<u32> {
        self.weight_cap
    }

    pub fn complete_through(&self) -> Option<i32> {
        self.complete_through
    }

    /// Stored entries, keyed by argument tuple.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &SparseVec)> {
        self.table.iter()
    }

    /// Largest arity with a nonzero stored entry.
    pub fn max_arity(&self) -> usize {
        self.table.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// True when every ℓ_n with n ≥ 2 vanishes.
    pub fn is_abelian(&self) -> bool {
        self.table.keys().all(|k| k.len() < 2)
    }

    pub fn tuple_labels(&self, key: &[usize]) -> Vec<String> {
        key.iter().map(|&i| self.carrier.label(i).to_string()).collect()
    }

    /// Degree of ℓ_n on the given arguments.
    pub fn output_degree(&self, key: &[usize]) -> i32 {
        let sum: i32 = key.iter().map(|&i| self.carrier.degree(i)).sum();
        match (self.convention, key.len()) {
            (Convention::Shifted, _) | (Convention::DgLie, 1) => sum - 1,
            (Convention::DgLie, _) => sum,
        }
    }

    /// Sign picked up by ℓ when two adjacent arguments of degrees `a`, `b`
    /// are swapped.
    pub fn swap_sign(&self, a: i32, b: i32) -> Scalar {
        let koszul = sign((a as i64) * (b as i64));
        match self.convention {
            Convention::Shifted => koszul,
            Convention::DgLie => -koszul,
        }
    }

    /// Sorts `args` into non-decreasing order and returns the sign relating
    /// ℓ(args) to ℓ(sorted). `None` when the symmetry law forces
    /// ℓ(args) = 0 (a repeated argument whose self-swap sign is −1).
    pub fn canonical(&self, args: &[usize]) -> Option<(Vec<usize>, Scalar)> {
        let mut v = args.to_vec();
        let mut s = Scalar::one();
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                s *= self.swap_sign(self.degree(v[j - 1]), self.degree(v[j]));
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        for w in v.windows(2) {
            if w[0] == w[1] && !self.swap_sign(self.degree(w[0]), self.degree(w[0])).is_one() {
                return None;
            }
        }
        Some((v, s))
    }

    /// ℓ_n on basis elements.
    pub fn bracket(&self, args: &[usize]) -> SparseVec {
        if args.len() > self.arity_cap {
            return SparseVec::new();
        }
        if let Some(v) = self.table.get(args) {
            return v.clone();
        }
        match self.canonical(args) {
            Some((key, s)) => self.table.get(&key).map(|v| v.scaled(&s)).unwrap_or_default(),
            None => SparseVec::new(),
        }
    }

    /// ℓ_n extended multilinearly.
    pub fn eval(&self, args: &[&SparseVec]) -> SparseVec {
        let mut out = SparseVec::new();
        if args.is_empty() || args.len() > self.arity_cap || args.iter().any(|a| a.is_zero()) {
            return out;
        }
        let mut idx = Vec::with_capacity(args.len());
        self.eval_rec(args, &mut idx, Scalar::one(), &mut out);
        out
    }

    fn eval_rec(&self, args: &[&SparseVec], idx: &mut Vec<usize>, coeff: Scalar, out: &mut SparseVec) {
        if idx.len() == args.len() {
            let b = self.bracket(idx);
            out.add_scaled(&b, &coeff);
            return;
        }
        for (i, c) in args[idx.len()].iter() {
            idx.push(i);
            self.eval_rec(args, idx, &coeff * c, out);
            idx.pop();
        }
    }

    /// ℓ_1 as a linear endomorphism of degree −1.
    pub fn differential(&self) -> LinearMap {
        let images = (0..self.dim()).map(|i| self.bracket(&[i])).collect();
        LinearMap::new(self.carrier.clone(), self.carrier.clone(), -1, images).expect("ℓ_1 has degree -1")
    }

    /// The underlying chain complex `(L, ℓ_1)`.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        ChainComplex::new(self.differential())
    }

    pub fn has_differential(&self) -> bool {
        self.table.keys().any(|k| k.len() == 1)
    }

    /// Replaces the carrier labels (same dimension and degrees).
    pub fn relabelled(&self, labels: Vec<String>) -> Result<Self> {
        let carrier = GradedModule::new(labels.into_iter().zip(self.carrier.degrees().iter().copied()).collect())?;
        let mut out = self.clone();
        out.carrier = carrier;
        Ok(out)
    }

    /// All non-decreasing index tuples of length `n` (multisets), optionally
    /// restricted by a predicate on partial tuples that is monotone in
    /// extension.
    pub fn multisets(&self, n: usize, mut keep: impl FnMut(&[usize]) -> bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(
            dim: usize,
            n: usize,
            start: usize,
            cur: &mut Vec<usize>,
            keep: &mut dyn FnMut(&[usize]) -> bool,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for i in start..dim {
                cur.push(i);
                if keep(cur) {
                    rec(dim, n, i, cur, keep, out);
                }
                cur.pop();
            }
        }
        rec(self.dim(), n, 0, &mut cur, &mut keep, &mut out);
        out
    }
}
