use proptest::prelude::*;

use super::*;
use crate::qlinalg::{factorial, q, FiniteGroup, GradedModule, GroupRepresentation, Matrix, SparseVec};

fn gens(spec: &[(&str, i32)]) -> Vec<(String, i32)> {
    spec.iter().map(|(l, d)| (l.to_string(), *d)).collect()
}

fn dims_by_weight(l: &SLInfinityAlgebra) -> Vec<usize> {
    (1..=l.max_weight()).map(|w| l.weights().iter().filter(|&&x| x == w).count()).collect()
}

fn wedge() -> FreeLie {
    FreeLie::build(&gens(&[("u1", 1), ("u2", 1)]), 3, Convention::DgLie).unwrap()
}

fn cp_n(n: usize) -> SLInfinityAlgebra {
    let carrier = GradedModule::new(vec![("x".into(), 2), ("y".into(), 2 * n as i32 + 1)]).unwrap();
    let value = SparseVec::unit(1).scaled(&factorial(n + 1).recip());
    SLInfinityAlgebra::new(carrier, vec![1, n as u32 + 1], Convention::Shifted, vec![(vec![0; n + 1], value)], n + 1)
        .unwrap()
}

fn scalar_action(l: &SLInfinityAlgebra, diag: &[i64]) -> GroupRepresentation {
    let mut m = Matrix::zeros(diag.len(), diag.len());
    for (i, &d) in diag.iter().enumerate() {
        m.set(i, i, q(d));
    }
    GroupRepresentation::new_unchecked(FiniteGroup::cyclic(2), l.carrier().clone(), vec![Matrix::identity(diag.len()), m])
        .unwrap()
}

fn swap_action(l: &SLInfinityAlgebra, a: &str, b: &str) -> GroupRepresentation {
    // Extend the generator swap to brackets through the tensor expansions.
    let fl = wedge_like(l);
    let n = l.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let swapped = l.label(j).replace(a, "\u{0}").replace(b, a).replace('\u{0}', b);
        let v = fl.parse_element(&swapped).unwrap();
        for (i, c) in v.iter() {
            m.set(i, j, c.clone());
        }
    }
    GroupRepresentation::from_generators(FiniteGroup::cyclic(2), l.carrier().clone(), &[(1, m)]).unwrap()
}

fn wedge_like(l: &SLInfinityAlgebra) -> FreeLie {
    let g: Vec<(String, i32)> =
        (0..l.dim()).filter(|&i| l.weight(i) == 1).map(|i| (l.label(i).to_string(), l.degree(i))).collect();
    FreeLie::build(&g, l.max_weight(), l.convention()).unwrap()
}

#[test]
fn free_lie_dimensions() {
    let w = wedge();
    assert_eq!(dims_by_weight(&w.algebra), vec![2, 3, 2]);
    assert_eq!(
        w.algebra.labels(),
        &["u1", "u2", "[u1,u2]", "[u1,u1]", "[u2,u2]", "[u1,[u1,u2]]", "[u2,[u1,u2]]"]
    );
    let ab = free_lie(&gens(&[("a", 2), ("b", 2)]), 4, Convention::DgLie).unwrap();
    assert_eq!(dims_by_weight(&ab), vec![2, 1, 2, 3]);
    assert_eq!(&ab.labels()[5..], &["[a,[a,[a,b]]]", "[b,[a,[a,b]]]", "[b,[b,[a,b]]]"]);
    let x = free_lie(&gens(&[("x", 2)]), 2, Convention::DgLie).unwrap();
    assert_eq!(x.labels(), &["x"]);
}

#[test]
fn parse_elements_in_chosen_basis() {
    let w = wedge();
    let v = w.parse_element("[u2,[u2,u1]]").unwrap();
    assert_eq!(v, SparseVec::unit(6));
    let v = w.parse_element("[u1,[u2,u2]]").unwrap();
    assert_eq!(v, SparseVec::unit(6).scaled(&q(-2)));
    assert!(w.parse_element("[u1,u3]").is_err());
}

#[test]
fn symmetry_checks() {
    let w = wedge().algebra;
    assert!(check_symmetry(&w).passed());
    let mut bad = w.clone();
    // [u2,u1] stored with the wrong sign: for odd u's it should equal [u1,u2].
    bad.set_entry(vec![1, 0], SparseVec::unit(2).scaled(&q(-1))).unwrap();
    let r = check_symmetry(&bad);
    assert!(!r.passed());
    assert_eq!(r.witnesses, vec!["u2", "u1"]);
    let ab = SLInfinityAlgebra::abelian(GradedModule::new(vec![("x".into(), 3)]).unwrap(), Convention::Shifted);
    assert!(check_symmetry(&ab).passed());
}

#[test]
fn jacobi_checks() {
    let w = wedge().algebra;
    assert!(check_jacobi(&w, 3).passed());
    assert!(check_dglie_identities(&w).passed());
    for n in 1..=3 {
        let l = cp_n(n);
        assert!(check_jacobi(&l, default_jacobi_range(&l)).passed());
    }
    let ab = free_lie(&gens(&[("a", 2), ("b", 2)]), 4, Convention::DgLie).unwrap();
    let mut bad = ab.clone();
    // (b, [a,[a,b]]) is tied to (a, [b,[a,b]]) by Jacobi on (a, b, [a,b]).
    let key = vec![1, 3];
    let old = ab.bracket(&key);
    let mut altered = old.clone();
    altered.add_term(5, q(1));
    bad.set_entry(key, altered).unwrap();
    let r = check_jacobi(&bad, 3);
    assert!(!r.passed());
    assert_eq!(r.level, Some(3));
    assert!(!check_dglie_identities(&bad).passed());
}

#[test]
fn suspension_examples() {
    let ab = free_lie(&gens(&[("a", 2), ("b", 2)]), 3, Convention::DgLie).unwrap();
    let s = suspend(&ab).unwrap();
    let deg = |l: &str| s.degree(s.carrier().find(l).unwrap());
    assert_eq!((deg("a"), deg("[a,b]"), deg("[a,[a,b]]")), (3, 5, 7));
    assert_eq!(desuspend(&s).unwrap(), ab);
    assert!(check_jacobi(&s, 3).passed());
    let abel = SLInfinityAlgebra::abelian(GradedModule::new(vec![("x".into(), 4)]).unwrap(), Convention::DgLie);
    let sa = suspend(&abel).unwrap();
    assert_eq!(sa.degree(0), 5);
    assert!(sa.is_abelian());
    // ℓ_2(sa, sb) = (−1)^{|a|} s[a,b] with |a| = 2.
    assert_eq!(s.bracket(&[0, 1]), ab.bracket(&[0, 1]));
}

#[test]
fn filtration_and_quotients() {
    let w = wedge().algebra;
    assert_eq!(lcs_dim(&w, 2), 5);
    assert_eq!(lcs_dim(&w, 3), 2);
    assert!(check_filtration_law(&w).passed());
    let qt = nilpotent_quotient(&w, 3).unwrap();
    assert_eq!(dims_by_weight(&qt), vec![2, 3]);
    assert!(check_jacobi(&qt, 3).passed());
    assert!(nilpotent_quotient(&w, 2).unwrap().is_abelian());
    assert_eq!(nilpotent_quotient(&w, 9).unwrap().dim(), w.dim());
    let abel = SLInfinityAlgebra::abelian(GradedModule::new(vec![("x".into(), 1)]).unwrap(), Convention::Shifted);
    assert_eq!(lcs_dim(&abel, 2), 0);
}

#[test]
fn equivariance_of_cp_n_actions() {
    for n in 1..=3usize {
        let l = cp_n(n);
        for a in [-2i64, -1, 2, 3] {
            let b = a.pow(n as u32 + 1);
            let gl = GSLInfinityAlgebra::new(l.clone(), scalar_action(&l, &[a, b])).unwrap();
            assert!(check_equivariance(&gl).passed(), "n={n} a={a}");
        }
        let gl = GSLInfinityAlgebra::new(l.clone(), scalar_action(&l, &[2, 2])).unwrap();
        assert!(!check_equivariance(&gl).passed());
    }
}

#[test]
fn fixed_subalgebras() {
    let w = wedge().algebra;
    let gl = GSLInfinityAlgebra::new(w.clone(), swap_action(&w, "u1", "u2")).unwrap();
    assert!(check_equivariance(&gl).passed());
    let fixed = fixed_subalgebra(&gl).unwrap();
    let dims: Vec<usize> = (1..=3).map(|n| fixed.carrier().dim_in(n)).collect();
    assert_eq!(dims, vec![1, 2, 1]);
    assert_eq!(fixed.label(fixed.carrier().indices_in(1)[0]), "u1 + u2");
    for n in 1..=3 {
        assert_eq!(fixed.carrier().dim_in(n), gl.action.invariants(n).len());
    }
    assert!(check_jacobi(&fixed, 3).passed());

    // Even sphere: x of degree n, ℓ_2(x, x) = [x,x], σx = −x.
    let carrier = GradedModule::new(vec![("x".into(), 4), ("[x,x]".into(), 7)]).unwrap();
    let sphere = SLInfinityAlgebra::new(carrier, vec![1, 2], Convention::Shifted, vec![(vec![0, 0], SparseVec::unit(1))], 2)
        .unwrap();
    let gl = GSLInfinityAlgebra::new(sphere.clone(), scalar_action(&sphere, &[-1, 1])).unwrap();
    let fixed = fixed_subalgebra(&gl).unwrap();
    assert_eq!(fixed.labels(), &["[x,x]"]);
    assert!(fixed.is_abelian());

    let triv = GSLInfinityAlgebra::trivial(w.clone(), FiniteGroup::cyclic(3));
    assert_eq!(fixed_subalgebra(&triv).unwrap().dim(), w.dim());
}

#[test]
fn broken_action_is_refused() {
    let carrier = GradedModule::new(vec![("x".into(), 2), ("y".into(), 3)]).unwrap();
    let l = SLInfinityAlgebra::new(carrier, vec![1, 2], Convention::Shifted, vec![(vec![0, 0], SparseVec::unit(1))], 2)
        .unwrap();
    // x is fixed but y = ℓ_2(x,x) is negated: invariants {x} are not closed.
    let gl = GSLInfinityAlgebra::new(l.clone(), scalar_action(&l, &[1, -1])).unwrap();
    assert!(!check_equivariance(&gl).passed());
    assert!(fixed_subalgebra(&gl).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn free_lie_outputs_satisfy_jacobi(degs in proptest::collection::vec(1i32..=3, 1..=3), shifted in any::<bool>()) {
        let max_weight = if degs.len() == 3 { 4 } else { 5 };
        let g: Vec<(String, i32)> = degs.iter().enumerate().map(|(i, &d)| (format!("g{i}"), d)).collect();
        let conv = if shifted { Convention::Shifted } else { Convention::DgLie };
        let l = free_lie(&g, max_weight, conv).unwrap();
        prop_assert!(check_symmetry(&l).passed());
        prop_assert!(check_filtration_law(&l).passed());
        prop_assert!(check_jacobi(&l, 3).passed());
        let qt = nilpotent_quotient(&l, 3).unwrap();
        prop_assert!(check_jacobi(&qt, 3).passed());
        if !shifted {
            prop_assert_eq!(desuspend(&suspend(&l).unwrap()).unwrap(), l);
        }
    }
}
