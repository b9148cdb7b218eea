//! Ready-made equivariant algebras: spheres with the antipodal action, CP^n
//! with its scalar actions, products of Eilenberg-Mac Lane spaces, the wedge
//! of two 2-spheres and the target of the `Map(S², S³∨S³)` computation.

use crate::cdga::{sphere_cohomology, CDGAModel};
use crate::error::{Error, Result};
use crate::liealg::{Convention, FreeLie, GSLInfinityAlgebra, SLInfinityAlgebra};
use crate::qlinalg::{factorial, q, FiniteGroup, GradedModule, GroupRepresentation, Matrix, Scalar, SparseVec};

fn diagonal(group: FiniteGroup, carrier: GradedModule, diag: &[Scalar]) -> Result<GroupRepresentation> {
    let n = diag.len();
    let mut m = Matrix::zeros(n, n);
    for (i, d) in diag.iter().enumerate() {
        m.set(i, i, d.clone());
    }
    GroupRepresentation::new_unchecked(group, carrier, vec![Matrix::identity(n), m])
}

/// `S^n` with the antipodal ℤ₂ action. Odd `n`: `ℚx`, σ trivial. Even `n`:
/// `ℚx ⊕ ℚ[x,x]` with `ℓ_2(x,x) = [x,x]`, σx = −x.
pub fn sphere(n: i32) -> Result<GSLInfinityAlgebra> {
    if n < 1 {
        return Err(Error::input("sphere dimension must be at least 1"));
    }
    let z2 = FiniteGroup::cyclic(2);
    if n % 2 == 1 {
        let carrier = GradedModule::new(vec![("x".into(), n)])?;
        let l = SLInfinityAlgebra::abelian(carrier.clone(), Convention::Shifted);
        let rep = GroupRepresentation::trivial(z2, carrier);
        return GSLInfinityAlgebra::new(l, rep);
    }
    let carrier = GradedModule::new(vec![("x".into(), n), ("[x,x]".into(), 2 * n - 1)])?;
    let l = SLInfinityAlgebra::new(carrier.clone(), vec![1, 2], Convention::Shifted, vec![(vec![0, 0], SparseVec::unit(1))], 2)?;
    GSLInfinityAlgebra::new(l, diagonal(z2, carrier, &[q(-1), q(1)])?)
}

/// The model of CP^n: `x` in degree 2, `y` in degree 2n+1 and
/// `ℓ_{n+1}(x,…,x) = y/(n+1)!`.
pub fn cp_n(n: usize) -> Result<SLInfinityAlgebra> {
    if n < 1 {
        return Err(Error::input("CP^n needs n ≥ 1"));
    }
    let carrier = GradedModule::new(vec![("x".into(), 2), ("y".into(), 2 * n as i32 + 1)])?;
    let value = SparseVec::unit(1).scaled(&factorial(n + 1).recip());
    SLInfinityAlgebra::new(carrier, vec![1, n as u32 + 1], Convention::Shifted, vec![(vec![0; n + 1], value)], n + 1)
}

/// CP^n with σ acting by `x ↦ ax`, `y ↦ a^{n+1}y`. Only `a = ±1` squares to
/// the identity; other values are accepted and reported by the action law
/// check.
pub fn cp_n_action(n: usize, a: Scalar) -> Result<GSLInfinityAlgebra> {
    if a == q(0) {
        return Err(Error::input("a must be nonzero"));
    }
    let l = cp_n(n)?;
    let mut b = q(1);
    for _ in 0..=n {
        b *= &a;
    }
    let rep = diagonal(FiniteGroup::cyclic(2), l.carrier().clone(), &[a, b])?;
    GSLInfinityAlgebra::new(l, rep)
}

/// The abelian algebra on `u1, …, um` in degree `n` with `S_m` permuting the
/// generators.
pub fn em_product(m: usize, n: i32) -> Result<GSLInfinityAlgebra> {
    if m < 1 || n < 1 {
        return Err(Error::input("need m ≥ 1 generators of degree n ≥ 1"));
    }
    let carrier = GradedModule::new((1..=m).map(|i| (format!("u{i}"), n)).collect())?;
    let l = SLInfinityAlgebra::abelian(carrier.clone(), Convention::Shifted);
    let group = FiniteGroup::symmetric(m);
    let mats = group
        .elements()
        .map(|g| {
            let perm = group.permutation(g).expect("symmetric group");
            let cols: Vec<SparseVec> = perm.iter().map(|&j| SparseVec::unit(j)).collect();
            Matrix::from_columns(m, &cols)
        })
        .collect();
    GSLInfinityAlgebra::new(l, GroupRepresentation::new(group, carrier, mats)?)
}

/// A free Lie algebra with a group acting by linear substitutions of the
/// generators. `images[k]` lists the images of the generators under the
/// `k`-th group generator `gens[k]`, as expressions in the generators.
pub fn free_lie_with_action(
    fl: &FreeLie,
    group: FiniteGroup,
    gens: &[usize],
    images: &[Vec<String>],
) -> Result<GSLInfinityAlgebra> {
    let mut pairs = Vec::with_capacity(gens.len());
    for (&g, imgs) in gens.iter().zip(images) {
        let vs = imgs.iter().map(|e| fl.parse_element(e)).collect::<Result<Vec<_>>>()?;
        pairs.push((g, fl.extend_linear(&vs)?));
    }
    let rep = GroupRepresentation::from_generators(group, fl.algebra.carrier().clone(), &pairs)?;
    GSLInfinityAlgebra::new(fl.algebra.clone(), rep)
}

/// `𝕃(u1, u2)` with `|u1| = |u2| = 1`, zero differential, up to weight 3, with
/// ℤ₂ swapping the generators.
pub fn wedge_of_two_spheres() -> Result<GSLInfinityAlgebra> {
    let fl = FreeLie::build(&[("u1".into(), 1), ("u2".into(), 1)], 3, Convention::DgLie)?;
    free_lie_with_action(&fl, FiniteGroup::cyclic(2), &[1], &[vec!["u2".into(), "u1".into()]])
}

/// The suspension of `𝕃(a, b)` with `|a| = |b| = 2` up to weight 4 (so
/// `|a| = |b| = 3` in the shifted grading), with ℤ₂ swapping `a` and `b`.
pub fn wedge_of_three_spheres() -> Result<GSLInfinityAlgebra> {
    let fl = FreeLie::build(&[("a".into(), 3), ("b".into(), 3)], 4, Convention::Shifted)?;
    free_lie_with_action(&fl, FiniteGroup::cyclic(2), &[1], &[vec!["b".into(), "a".into()]])
}

/// `H*(S^k; ℚ)` with σx = −x.
pub fn antipodal_sphere_cohomology(k: i32) -> Result<CDGAModel> {
    let a = sphere_cohomology(k, "x");
    let rep = diagonal(FiniteGroup::cyclic(2), a.carrier().clone(), &[q(1), q(-1)])?;
    a.with_action(Some(rep))
}
