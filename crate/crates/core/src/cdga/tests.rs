use proptest::prelude::*;

use super::*;
use crate::examples::{antipodal_sphere_cohomology, cp_n, cp_n_action, wedge_of_three_spheres};
use crate::liealg::{
    check_equivariance, check_jacobi, check_symmetry, free_lie, suspend, Convention, GSLInfinityAlgebra,
    SLInfinityAlgebra,
};
use crate::qlinalg::{q, qr, FiniteGroup, GradedModule, GroupRepresentation, Matrix, SparseVec};

fn dims(l: &SLInfinityAlgebra, range: std::ops::RangeInclusive<i32>) -> Vec<usize> {
    range.map(|n| l.carrier().dim_in(n)).collect()
}

#[test]
fn sphere_cohomology_is_a_cdga() {
    let a = sphere_cohomology(2, "x");
    assert!(check_cdga(&a).passed());
    let a = antipodal_sphere_cohomology(2).unwrap();
    assert!(check_cdga(&a).passed());
    assert!(check_cdga(&CDGAModel::unit_algebra()).passed());
}

#[test]
fn dropped_commutativity_sign_is_caught() {
    // Λ(u, v) truncated to words of length ≤ 2, |u| = |v| = 1, with uv = vu.
    let carrier = GradedModule::new(vec![("1".into(), 0), ("u".into(), 1), ("v".into(), 1), ("uv".into(), 2)]).unwrap();
    let e = SparseVec::unit;
    let good = vec![((1, 2), e(3)), ((2, 1), e(3).neg())];
    let a = CDGAModel::new(carrier.clone(), 0, good, vec![SparseVec::new(); 4], None).unwrap();
    assert!(check_cdga(&a).passed());
    let bad = vec![((1, 2), e(3)), ((2, 1), e(3))];
    let a = CDGAModel::new(carrier, 0, bad, vec![SparseVec::new(); 4], None).unwrap();
    let r = check_cdga(&a);
    assert!(!r.passed());
    assert_eq!(r.message, "graded commutativity");
    assert_eq!(r.witnesses, vec!["u", "v"]);
}

#[test]
fn broken_leibniz_and_action_are_caught() {
    let carrier = GradedModule::new(vec![("1".into(), 0), ("t".into(), 0), ("w".into(), 1)]).unwrap();
    let e = SparseVec::unit;
    let prods = vec![((1, 1), e(1)), ((1, 2), e(2))];
    let a = CDGAModel::new(carrier.clone(), 0, prods, vec![SparseVec::new(), e(2), SparseVec::new()], None).unwrap();
    // d(t·t) = d(t) = w but 2 t·dt = 2w.
    assert_eq!(check_cdga(&a).message, "Leibniz rule");

    let a = sphere_cohomology(2, "x");
    let mut m = Matrix::identity(2);
    m.set(0, 0, q(-1));
    let rep = GroupRepresentation::new_unchecked(FiniteGroup::cyclic(2), a.carrier().clone(), vec![Matrix::identity(2), m])
        .unwrap();
    let a = a.with_action(Some(rep)).unwrap();
    assert_eq!(check_cdga(&a).message, "action respects products");
}

#[test]
fn unit_algebra_tensor_is_the_algebra() {
    let l = cp_n(2).unwrap();
    let t = tensor_model(&CDGAModel::unit_algebra(), &l, 10).unwrap();
    assert!(t.notice.is_none());
    assert_eq!(t.algebra.dim(), 2);
    assert_eq!(t.algebra.degree(0), 2);
    assert_eq!(t.algebra.bracket(&[0, 0, 0]), l.bracket(&[0, 0, 0]));
    assert_eq!(t.algebra.entries().count(), l.entries().count());
    assert_eq!(t.algebra.carrier(), l.carrier());
    assert!(t.algebra.entries().eq(l.entries()));
}

#[test]
fn mapping_space_tensor_table() {
    let gl = wedge_of_three_spheres().unwrap();
    let a = antipodal_sphere_cohomology(2).unwrap();
    assert!(connectivity_guard(&a, &gl.algebra));
    let t = tensor_model_equivariant(&a, &gl, 7).unwrap();
    assert_eq!(dims(&t.algebra, 1..=7), vec![2, 0, 3, 0, 3, 0, 5]);
    let eq = t.equivariant().unwrap();
    assert!(check_equivariance(&eq).passed());
    let inv: Vec<usize> = (1..=7).map(|n| eq.action.invariants(n).len()).collect();
    assert_eq!(inv, vec![1, 0, 2, 0, 1, 0, 3]);
    for n in 1..=7 {
        let r = eq.action.reynolds(n);
        assert_eq!(r.rank(), inv[n as usize - 1]);
    }

    // σ(x⊗a) = −x⊗b.
    let find = |s: &str| t.algebra.labels().iter().position(|l| l == s).unwrap();
    let (xa, xb) = (find("x⊗a"), find("x⊗b"));
    assert_eq!(eq.action.apply(1, &SparseVec::unit(xa)), SparseVec::unit(xb).neg());
    let (oa, ob) = (find("1⊗[a,b]"), find("x⊗[a,b]"));
    assert_eq!(eq.action.apply(1, &SparseVec::unit(oa)), SparseVec::unit(oa).neg());
    assert_eq!(eq.action.apply(1, &SparseVec::unit(ob)), SparseVec::unit(ob));
    assert!(check_jacobi(&t.algebra, 3).passed());
}

#[test]
fn connectivity_guard_cases() {
    let s2 = sphere_cohomology(2, "x");
    let l = cp_n(1).unwrap();
    assert!(!connectivity_guard(&s2, &l));
    let ab = free_lie(&[("a".into(), 2), ("b".into(), 2)], 2, Convention::DgLie).unwrap();
    assert!(connectivity_guard(&s2, &ab));
    let one = GradedModule::new(vec![("z".into(), 1)]).unwrap();
    let low = SLInfinityAlgebra::abelian(one, Convention::Shifted);
    assert!(!connectivity_guard(&s2, &low));
    assert!(connectivity_guard(&CDGAModel::unit_algebra(), &low));
}

#[test]
fn low_degrees_are_truncated_with_notice() {
    let s2 = sphere_cohomology(2, "x");
    let one = GradedModule::new(vec![("z".into(), 2)]).unwrap();
    let l = SLInfinityAlgebra::abelian(one, Convention::Shifted);
    let t = tensor_model(&s2, &l, 3).unwrap();
    assert_eq!(t.algebra.labels(), &["1⊗z"]);
    assert!(t.notice.is_some());
}

#[test]
fn cochains_of_abelian_algebra() {
    let carrier = GradedModule::new(vec![("v".into(), 3)]).unwrap();
    let l = SLInfinityAlgebra::abelian(carrier, Convention::Shifted);
    let ce = ce_cochains(&l, None, 4, 20).unwrap();
    assert_eq!(ce.dim(), 2);
    assert!((0..ce.dim()).all(|i| ce.differential_of(i).is_zero()));
    assert!(check_cdga(&ce).passed());
    let carrier = GradedModule::new(vec![("v".into(), 2)]).unwrap();
    let l = SLInfinityAlgebra::abelian(carrier, Convention::Shifted);
    let ce = ce_cochains(&l, None, 3, 20).unwrap();
    assert_eq!(ce.carrier().labels(), &["1", "v*", "v*·v*", "v*·v*·v*"]);
}

/// By hand: ℓ_2(x,x) = y/2 and |y| = 3, so d y* = −(−1)^3 · (−1)^{2·2} / 2! · 1/2 · x*x* = x*x*/4.
#[test]
fn cochains_of_cp1() {
    let l = cp_n(1).unwrap();
    let ce = ce_cochains(&l, None, 3, 12).unwrap();
    let label = |s: &str| ce.carrier().labels().iter().position(|l| l == s).unwrap();
    let (x, y, xx) = (label("x*"), label("y*"), label("x*·x*"));
    assert!(ce.differential_of(x).is_zero());
    assert_eq!(ce.differential_of(y), &SparseVec::unit(xx).scaled(&qr(1, 4)));
    assert!(check_cdga(&ce).passed());
}

#[test]
fn contragredient_action_on_cochains() {
    let gl = cp_n_action(1, q(-1)).unwrap();
    let ce = ce_cochains(&gl.algebra, Some(&gl.action), 2, 8).unwrap();
    let x = ce.carrier().labels().iter().position(|l| l == "x*").unwrap();
    let rep = ce.action().unwrap();
    assert_eq!(rep.apply(1, &SparseVec::unit(x)), SparseVec::unit(x).neg());
    assert!(check_cdga(&ce).passed());
}

#[test]
fn cochains_detect_jacobi_failure() {
    let fl = free_lie(&[("a".into(), 1), ("b".into(), 1)], 3, Convention::DgLie).unwrap();
    let good = suspend(&fl).unwrap();
    assert!(check_jacobi(&good, 3).passed());
    assert!(ce_cochains(&good, None, 3, 12).is_ok());
    let mut bad = good.clone();
    // Rescale one weight-three bracket only.
    let key = bad.entries().find(|(k, v)| k.len() == 2 && bad.weight(v.support().next().unwrap()) == 3).unwrap().0.clone();
    let v = bad.bracket(&key).scaled(&q(2));
    bad.set_entry(key, v).unwrap();
    let jac = check_jacobi(&bad, 3).passed();
    let ce = ce_cochains(&bad, None, 3, 12).is_ok();
    assert_eq!(jac, ce);
    assert!(!jac);
}

fn small_algebra() -> impl Strategy<Value = SLInfinityAlgebra> {
    (1usize..=2, 1i32..=2, 1u32..=3, any::<bool>()).prop_map(|(n, d, w, shifted)| {
        let gens: Vec<(String, i32)> = (0..n).map(|i| (format!("g{i}"), d)).collect();
        let conv = if shifted { Convention::Shifted } else { Convention::DgLie };
        let deg_shift = if shifted { 2 } else { 1 };
        let gens: Vec<(String, i32)> = gens.into_iter().map(|(l, d)| (l, d + deg_shift)).collect();
        free_lie(&gens, w, conv).unwrap()
    })
}

fn small_cdga() -> impl Strategy<Value = CDGAModel> {
    prop_oneof![
        Just(CDGAModel::unit_algebra()),
        (1i32..=2).prop_map(|k| sphere_cohomology(k, "x")),
        Just(exterior_pair()),
    ]
}

/// Λ(u, v) with |u| = |v| = 1, which is H*(S¹ × S¹).
fn exterior_pair() -> CDGAModel {
    let carrier = GradedModule::new(vec![("1".into(), 0), ("u".into(), 1), ("v".into(), 1), ("uv".into(), 2)]).unwrap();
    let e = SparseVec::unit;
    CDGAModel::new(carrier, 0, vec![((1, 2), e(3))], vec![SparseVec::new(); 4], None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn tensor_models_are_sl_infinity(a in small_cdga(), l in small_algebra()) {
        prop_assert!(check_cdga(&a).passed());
        let t = tensor_model(&a, &l, 8).unwrap();
        prop_assert!(check_symmetry(&t.algebra).passed());
        prop_assert!(check_jacobi(&t.algebra, 3).passed());
    }
}

#[test]
fn equivariant_tensor_of_trivial_actions() {
    let l = free_lie(&[("a".into(), 2)], 2, Convention::DgLie).unwrap();
    let gl = GSLInfinityAlgebra::trivial(l, FiniteGroup::cyclic(2));
    let a = sphere_cohomology(2, "x");
    let rep = GroupRepresentation::trivial(FiniteGroup::cyclic(2), a.carrier().clone());
    let a = a.with_action(Some(rep)).unwrap();
    let t = tensor_model_equivariant(&a, &gl, 6).unwrap();
    assert!(t.action.unwrap().is_trivial());
}
