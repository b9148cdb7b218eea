//! Free graded Lie algebras, realized inside the tensor algebra.
//!
//! The bracket is the graded commutator `[P, Q] = PQ − (−1)^{|P||Q|} QP` with
//! dg Lie degrees. A basis of weight `w` is selected greedily among brackets
//! `[g, b]` with `g` a generator and `b` a basis element of weight `w − 1`
//! (inner element major, generators in input order); weight 2 tries the
//! mixed brackets `[g_i, g_j]`, `i < j`, before the squares `[g_i, g_i]`.
//! Independence is decided by exact rank in the tensor algebra.

use crate::error::{Error, Result};
use crate::qlinalg::{parse_scalar, GradedModule, Matrix, Scalar, SparseVec};

use super::algebra::{Convention, SLInfinityAlgebra};
use super::suspend::suspend;
use super::tensor_alg::{TensorElem, WordEchelon};

/// Budget on the number of words of the largest weight.
const WORD_BUDGET: usize = 400_000;

/// A free Lie algebra together with the tensor expansion of every basis element.
#[derive(Clone, Debug)]
pub struct FreeLie {
    pub algebra: SLInfinityAlgebra,
    generators: Vec<(String, i32)>,
    expansions: Vec<TensorElem>,
    echelons: Vec<WordEchelon>,
    offsets: Vec<usize>,
}

impl FreeLie {
    /// `generators` carry degrees in the requested convention; all degrees must be ≥ 1.
    pub fn build(generators: &[(String, i32)], max_weight: u32, convention: Convention) -> Result<FreeLie> {
        if generators.is_empty() {
            return Err(Error::input("a free Lie algebra needs at least one generator"));
        }
        if max_weight == 0 {
            return Err(Error::input("max_weight must be at least 1"));
        }
        if let Some((l, d)) = generators.iter().find(|(_, d)| *d < 1) {
            return Err(Error::input(format!("generator {l} has degree {d}; free Lie generators need degree ≥ 1")));
        }
        let words = (generators.len() as f64).powi(max_weight as i32);
        if words > WORD_BUDGET as f64 {
            return Err(Error::Capacity(format!(
                "{} generators up to weight {max_weight} exceed the word budget of {WORD_BUDGET}",
                generators.len()
            )));
        }
        let shift = if convention == Convention::Shifted { 1 } else { 0 };
        let gens: Vec<(String, i32)> = generators.iter().map(|(l, d)| (l.clone(), d - shift)).collect();
        let gdeg: Vec<i32> = gens.iter().map(|g| g.1).collect();

        let mut labels: Vec<String> = Vec::new();
        let mut degrees: Vec<i32> = Vec::new();
        let mut weights: Vec<u32> = Vec::new();
        let mut expansions: Vec<TensorElem> = Vec::new();
        let mut echelons: Vec<WordEchelon> = Vec::new();
        let mut offsets: Vec<usize> = Vec::new();

        for w in 1..=max_weight {
            offsets.push(labels.len());
            let mut ech = WordEchelon::default();
            let mut candidates: Vec<(String, i32, TensorElem)> = Vec::new();
            match w {
                1 => {
                    for (i, (l, d)) in gens.iter().enumerate() {
                        candidates.push((l.clone(), *d, TensorElem::letter(i)));
                    }
                }
                2 => {
                    let n = gens.len();
                    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).chain((0..n).map(|i| (i, i)));
                    for (i, j) in pairs {
                        let e = TensorElem::letter(i).commutator(gdeg[i], &TensorElem::letter(j), gdeg[j]);
                        candidates.push((format!("[{},{}]", gens[i].0, gens[j].0), gdeg[i] + gdeg[j], e));
                    }
                }
                _ => {
                    let lo = offsets[w as usize - 2];
                    let hi = offsets[w as usize - 1];
                    for b in lo..hi {
                        for (g, (gl, gd)) in gens.iter().enumerate() {
                            let e = TensorElem::letter(g).commutator(*gd, &expansions[b], degrees[b]);
                            candidates.push((format!("[{gl},{}]", labels[b]), gd + degrees[b], e));
                        }
                    }
                }
            }
            for (label, deg, e) in candidates {
                if !e.is_zero() && ech.insert(&e) {
                    labels.push(label);
                    degrees.push(deg);
                    weights.push(w);
                    expansions.push(e);
                }
            }
            echelons.push(ech);
        }
        offsets.push(labels.len());

        let carrier = GradedModule::new(labels.iter().cloned().zip(degrees.iter().copied()).collect())?;
        let shell = SLInfinityAlgebra::new(carrier.clone(), weights.clone(), Convention::DgLie, Vec::new(), 2)?;
        let mut entries = Vec::new();
        for i in 0..labels.len() {
            for j in i..labels.len() {
                let w = weights[i] + weights[j];
                if w > max_weight || shell.canonical(&[i, j]).is_none() {
                    continue;
                }
                let e = expansions[i].commutator(degrees[i], &expansions[j], degrees[j]);
                if e.is_zero() {
                    continue;
                }
                let local = echelons[w as usize - 1].coordinates(&e)?;
                let off = offsets[w as usize - 1];
                entries.push((vec![i, j], local.reindexed(|k| Some(k + off))));
            }
        }
        let min_deg = gdeg.iter().copied().min().unwrap();
        let complete = (max_weight as i32 + 1) * min_deg - 1;
        let dglie = SLInfinityAlgebra::new(carrier, weights, Convention::DgLie, entries, 2)?
            .with_weight_cap(Some(max_weight))
            .with_complete_through(Some(complete));
        let algebra = match convention {
            Convention::DgLie => dglie,
            Convention::Shifted => suspend(&dglie)?,
        };
        Ok(FreeLie { algebra, generators: gens, expansions, echelons, offsets })
    }

    pub fn expansion(&self, i: usize) -> &TensorElem {
        &self.expansions[i]
    }

    /// Generators with their dg Lie degrees.
    pub fn generators(&self) -> &[(String, i32)] {
        &self.generators
    }

    /// Extends a degree-preserving linear map on generators to the whole
    /// truncated algebra. `images[i]` is the image of generator `i` in
    /// generator coordinates. Returns the matrix in the chosen basis.
    pub fn extend_linear(&self, images: &[SparseVec]) -> Result<Matrix> {
        let n = self.generators.len();
        if images.len() != n {
            return Err(Error::input(format!("{} generator images for {n} generators", images.len())));
        }
        let mut letters = Vec::with_capacity(n);
        for (i, v) in images.iter().enumerate() {
            let mut e = TensorElem::default();
            for (j, c) in v.iter() {
                if j >= n || self.generators[j].1 != self.generators[i].1 {
                    return Err(Error::input(format!(
                        "image of {} must combine generators of the same degree",
                        self.generators[i].0
                    )));
                }
                e.add_term(vec![j], c.clone());
            }
            letters.push(e);
        }
        let dim = self.algebra.dim();
        let mut m = Matrix::zeros(dim, dim);
        for col in 0..dim {
            let mut image = TensorElem::default();
            for (word, c) in &self.expansions[col].0 {
                let mut acc = TensorElem::default();
                acc.add_term(Vec::new(), c.clone());
                for &letter in word {
                    acc = acc.mul(&letters[letter]);
                }
                image.add_scaled(&acc, &Scalar::from_integer(1.into()));
            }
            let len = self.expansions[col].0.keys().next().map_or(1, Vec::len);
            let local = self.echelons[len - 1].coordinates(&image)?;
            for (k, c) in local.iter() {
                m.set(k + self.offsets[len - 1], col, c.clone());
            }
        }
        Ok(m)
    }

    /// Parses a linear combination of bracket expressions in the generators,
    /// such as `[u1,[u1,u2]] + [u2,[u1,u2]]` or `-1/2 [a,b]`, and returns its
    /// coordinates in the chosen basis.
    pub fn parse_element(&self, expr: &str) -> Result<SparseVec> {
        let (elem, _) = self.parse_combination(expr)?;
        let mut out = SparseVec::new();
        let mut by_len: std::collections::BTreeMap<usize, TensorElem> = Default::default();
        for (w, c) in &elem.0 {
            by_len.entry(w.len()).or_default().add_term(w.clone(), c.clone());
        }
        for (len, part) in by_len {
            let ech = self
                .echelons
                .get(len - 1)
                .ok_or_else(|| Error::input(format!("{expr:?} has weight {len} beyond the truncation")))?;
            let local = ech.coordinates(&part)?;
            out.add_scaled(&local.reindexed(|k| Some(k + self.offsets[len - 1])), &Scalar::from_integer(1.into()));
        }
        Ok(out)
    }

    fn parse_combination(&self, expr: &str) -> Result<(TensorElem, Option<i32>)> {
        let mut total = TensorElem::default();
        let mut degree = None;
        for (coeff, term) in split_terms(expr)? {
            let mut chars = term.trim().chars().peekable();
            let (e, d) = self.parse_bracket(&mut chars)?;
            if chars.any(|c| !c.is_whitespace()) {
                return Err(Error::input(format!("trailing input in {term:?}")));
            }
            if degree.is_some_and(|x| x != d) {
                return Err(Error::input(format!("{expr:?} is not homogeneous")));
            }
            degree = Some(d);
            total.add_scaled(&e, &coeff);
        }
        Ok((total, degree))
    }

    fn parse_bracket(&self, it: &mut std::iter::Peekable<std::str::Chars<'_>>) -> Result<(TensorElem, i32)> {
        while it.peek().is_some_and(|c| c.is_whitespace()) {
            it.next();
        }
        if it.peek() == Some(&'[') {
            it.next();
            let (a, da) = self.parse_bracket(it)?;
            skip_ws(it);
            if it.next() != Some(',') {
                return Err(Error::input("expected ',' in bracket"));
            }
            let (b, db) = self.parse_bracket(it)?;
            skip_ws(it);
            if it.next() != Some(']') {
                return Err(Error::input("expected ']' closing bracket"));
            }
            return Ok((a.commutator(da, &b, db), da + db));
        }
        let mut name = String::new();
        while let Some(&c) = it.peek() {
            if c == ',' || c == ']' || c.is_whitespace() {
                break;
            }
            name.push(c);
            it.next();
        }
        let g = self
            .generators
            .iter()
            .position(|(l, _)| *l == name)
            .ok_or_else(|| Error::input(format!("unknown generator {name:?}")))?;
        Ok((TensorElem::letter(g), self.generators[g].1))
    }
}

fn skip_ws(it: &mut std::iter::Peekable<std::str::Chars<'_>>) {
    while it.peek().is_some_and(|c| c.is_whitespace()) {
        it.next();
    }
}

/// Splits `"a - 1/2 [b,c] + d"` at top-level signs into (coefficient, term).
pub fn split_terms(expr: &str) -> Result<Vec<(Scalar, String)>> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negative = false;
    let flush = |cur: &mut String, neg: bool, terms: &mut Vec<(Scalar, String)>| -> Result<()> {
        let t = cur.trim();
        if t.is_empty() {
            return Ok(());
        }
        let (coeff, body) = match t.split_once(' ') {
            Some((c, rest)) if c.chars().all(|ch| ch.is_ascii_digit() || ch == '/') => (parse_scalar(c)?, rest.trim()),
            _ => (Scalar::from_integer(1.into()), t),
        };
        let coeff = if neg { -coeff } else { coeff };
        terms.push((coeff, body.to_string()));
        cur.clear();
        Ok(())
    };
    for c in expr.chars() {
        match c {
            '[' | '(' => {
                depth += 1;
                current.push(c);
            }
            ']' | ')' => {
                depth -= 1;
                current.push(c);
            }
            '+' | '-' if depth == 0 => {
                flush(&mut current, negative, &mut terms)?;
                negative = c == '-';
            }
            _ => current.push(c),
        }
    }
    flush(&mut current, negative, &mut terms)?;
    if terms.is_empty() {
        return Err(Error::input(format!("empty expression {expr:?}")));
    }
    Ok(terms)
}

/// The free graded Lie algebra on `generators` truncated at `max_weight`.
pub fn free_lie(generators: &[(String, i32)], max_weight: u32, convention: Convention) -> Result<SLInfinityAlgebra> {
    FreeLie::build(generators, max_weight, convention).map(|f| f.algebra)
}
