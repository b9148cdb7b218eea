use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qlinalg::{sign, GradedModule, GroupRepresentation, SparseVec};
use crate::report::CheckReport;

/// A finite commutative differential graded algebra with cohomological
/// grading (degrees ≥ 0) and an optional group action.
///
/// Products are looked up on the exact pair first; otherwise products with
/// the unit are implicit and the swapped pair is used with the Koszul sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CDGAModel {
    carrier: GradedModule,
    unit: usize,
    products: BTreeMap<(usize, usize), SparseVec>,
    differential: Vec<SparseVec>,
    action: Option<GroupRepresentation>,
}

impl CDGAModel {
    pub fn new(
        carrier: GradedModule,
        unit: usize,
        products: Vec<((usize, usize), SparseVec)>,
        differential: Vec<SparseVec>,
        action: Option<GroupRepresentation>,
    ) -> Result<Self> {
        let n = carrier.dim();
        if unit >= n || carrier.degree(unit) != 0 {
            return Err(Error::input("the unit must be a basis element of degree 0"));
        }
        if let Some(i) = (0..n).find(|&i| carrier.degree(i) < 0) {
            return Err(Error::input(format!("{} has negative degree", carrier.label(i))));
        }
        if differential.len() != n {
            return Err(Error::input(format!("{} differential images for {n} basis elements", differential.len())));
        }
        for (i, v) in differential.iter().enumerate() {
            if v.support().any(|j| j >= n || carrier.degree(j) != carrier.degree(i) + 1) {
                return Err(Error::input(format!("d({}) is not of degree {}", carrier.label(i), carrier.degree(i) + 1)));
            }
        }
        let mut table = BTreeMap::new();
        for ((i, j), v) in products {
            if i >= n || j >= n {
                return Err(Error::input("product index out of range"));
            }
            let deg = carrier.degree(i) + carrier.degree(j);
            if v.support().any(|k| k >= n || carrier.degree(k) != deg) {
                return Err(Error::input(format!(
                    "{}·{} must have degree {deg}",
                    carrier.label(i),
                    carrier.label(j)
                )));
            }
            if table.insert((i, j), v).is_some() {
                return Err(Error::input(format!("product {}·{} given twice", carrier.label(i), carrier.label(j))));
            }
        }
        if let Some(a) = &action {
            if a.carrier().degrees() != carrier.degrees() {
                return Err(Error::input("the action lives on a different carrier"));
            }
        }
        let action = action.map(|a| a.with_carrier(carrier.clone())).transpose()?;
        Ok(CDGAModel { carrier, unit, products: table, differential, action })
    }

    /// The ground field ℚ concentrated in degree 0.
    pub fn unit_algebra() -> Self {
        let carrier = GradedModule::new(vec![("1".into(), 0)]).unwrap();
        CDGAModel::new(carrier, 0, Vec::new(), vec![SparseVec::new()], None).unwrap()
    }

    pub fn with_action(mut self, action: Option<GroupRepresentation>) -> Result<Self> {
        if let Some(a) = &action {
            if a.carrier().degrees() != self.carrier.degrees() {
                return Err(Error::input("the action lives on a different carrier"));
            }
        }
        self.action = action.map(|a| a.with_carrier(self.carrier.clone())).transpose()?;
        Ok(self)
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

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn action(&self) -> Option<&GroupRepresentation> {
        self.action.as_ref()
    }

    pub fn products(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.products.iter()
    }

    pub fn differential_of(&self, i: usize) -> &SparseVec {
        &self.differential[i]
    }

    /// Largest degree carrying a basis element.
    pub fn top_degree(&self) -> i32 {
        self.carrier.degrees().iter().copied().max().unwrap_or(0)
    }

    pub fn product(&self, i: usize, j: usize) -> SparseVec {
        if let Some(v) = self.products.get(&(i, j)) {
            return v.clone();
        }
        if i == self.unit {
            return SparseVec::unit(j);
        }
        if j == self.unit {
            return SparseVec::unit(i);
        }
        match self.products.get(&(j, i)) {
            Some(v) => v.scaled(&sign((self.degree(i) as i64) * (self.degree(j) as i64))),
            None => SparseVec::new(),
        }
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&self.product(i, j), &(x * y));
            }
        }
        out
    }

    pub fn d(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            out.add_scaled(&self.differential[i], x);
        }
        out
    }
}

/// Exhaustive check of the CDGA axioms and, when present, of the action.
pub fn check_cdga(a: &CDGAModel) -> CheckReport {
    let n = a.dim();
    let e = SparseVec::unit;
    let labels = |ix: &[usize]| ix.iter().map(|&i| a.carrier.label(i).to_string()).collect::<Vec<_>>();
    let deg = |i: usize| a.degree(i) as i64;
    let mut cases = 0;
    let fail = |axiom: &str, w: Vec<String>, cases: usize| CheckReport::fail("cdga", None, w, axiom.to_string(), cases);

    for i in 0..n {
        cases += 1;
        if a.mul(&e(a.unit), &e(i)) != e(i) || a.mul(&e(i), &e(a.unit)) != e(i) {
            return fail("unit", labels(&[i]), cases);
        }
        if !a.d(&a.d(&e(i))).is_zero() {
            return fail("d∘d = 0", labels(&[i]), cases);
        }
    }
    for i in 0..n {
        for j in 0..n {
            cases += 1;
            let ab = a.mul(&e(i), &e(j));
            if ab != a.mul(&e(j), &e(i)).scaled(&sign(deg(i) * deg(j))) {
                return fail("graded commutativity", labels(&[i, j]), cases);
            }
            let lhs = a.d(&ab);
            let rhs = a.mul(&a.d(&e(i)), &e(j)).plus(&a.mul(&e(i), &a.d(&e(j))).scaled(&sign(deg(i))));
            if lhs != rhs {
                return fail("Leibniz rule", labels(&[i, j]), cases);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = a.mul(&e(i), &e(j));
            for k in 0..n {
                cases += 1;
                if a.mul(&ij, &e(k)) != a.mul(&e(i), &a.mul(&e(j), &e(k))) {
                    return fail("associativity", labels(&[i, j, k]), cases);
                }
            }
        }
    }
    if let Some(rep) = &a.action {
        if let Some(msg) = rep.law_violation() {
            return CheckReport::fail("cdga", None, Vec::new(), format!("action: {msg}"), cases);
        }
        let g_name = |g: usize| rep.group().name(g).to_string();
        for g in rep.group().elements().skip(1) {
            for i in 0..n {
                cases += 1;
                if rep.apply(g, &a.d(&e(i))) != a.d(&rep.apply(g, &e(i))) {
                    let mut w = vec![g_name(g)];
                    w.extend(labels(&[i]));
                    return fail("action commutes with d", w, cases);
                }
                for j in 0..n {
                    cases += 1;
                    let lhs = rep.apply(g, &a.mul(&e(i), &e(j)));
                    let rhs = a.mul(&rep.apply(g, &e(i)), &rep.apply(g, &e(j)));
                    if lhs != rhs {
                        let mut w = vec![g_name(g)];
                        w.extend(labels(&[i, j]));
                        return fail("action respects products", w, cases);
                    }
                }
            }
        }
    }
    CheckReport::pass("cdga", cases)
}

/// `H*(S^k; ℚ)` = ℚ1 ⊕ ℚx with |x| = k and x² = 0.
pub fn sphere_cohomology(k: i32, label: &str) -> CDGAModel {
    let carrier = GradedModule::new(vec![("1".into(), 0), (label.to_string(), k)]).unwrap();
    CDGAModel::new(carrier, 0, Vec::new(), vec![SparseVec::new(); 2], None).unwrap()
}
