use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::liealg::{Convention, SLInfinityAlgebra};
use crate::qlinalg::{FiniteGroup, GradedModule, Scalar, SparseVec};
use crate::report::all_passed;

fn groups() -> Vec<FiniteGroup> {
    vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)]
}

#[test]
fn eg_identities_hold() {
    for g in groups() {
        let eg = build_eg(g, 3).unwrap();
        let reports = eg.check();
        assert!(all_passed(&reports), "{reports:?}");
    }
}

#[test]
fn eg_vertices_round_trip() {
    let eg = build_eg(FiniteGroup::symmetric(3), 3).unwrap();
    for t in eg.level(3) {
        assert_eq!(eg.from_vertices(&eg.vertices(&t)), t);
        // faces delete vertices
        for i in 0..=3 {
            let mut v = eg.vertices(&t);
            v.remove(i);
            assert_eq!(eg.vertices(&eg.face(i, &t)), v);
        }
    }
}

#[test]
fn eg_refuses_large_levels() {
    assert!(matches!(EGComplex::new(FiniteGroup::symmetric(3), 8, 1000), Err(crate::Error::Capacity(_))));
}

#[test]
fn mc_module_of_one_degree_one_generator() {
    // Degree-0 cycles are 1-cocycles on Δ^m, i.e. coboundaries of vertex
    // functions modulo constants.
    let l = SLInfinityAlgebra::abelian(GradedModule::new(vec![("a".into(), 1)]).unwrap(), Convention::Shifted);
    let m = abelian_mc_model(&l, None, 4).unwrap();
    for k in 0..=4 {
        assert_eq!(m.dim(k), k);
        assert_eq!(m.ambient_dim(k), k * (k + 1) / 2);
    }
    assert!(all_passed(&m.check()));
}

#[test]
fn mc_module_rejects_brackets() {
    let l = crate::examples::sphere(2).unwrap();
    assert!(matches!(abelian_mc_model(&l.algebra, None, 2), Err(crate::Error::Hypothesis(_))));
}

#[test]
fn sign_characters() {
    assert_eq!(sign_character(&FiniteGroup::cyclic(3)).unwrap(), vec![1, 1, 1]);
    assert_eq!(sign_character(&FiniteGroup::cyclic(4)).unwrap(), vec![1, -1, 1, -1]);
    let s3 = FiniteGroup::symmetric(3);
    let chi = sign_character(&s3).unwrap();
    for g in s3.elements() {
        let p = s3.permutation(g).unwrap();
        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        assert_eq!(chi[g], if inversions % 2 == 0 { 1 } else { -1 });
    }
}

#[test]
fn target_specs() {
    let z2 = FiniteGroup::cyclic(2);
    let t = abelian_target("1,1:swap", &z2).unwrap();
    assert_eq!(t.action.matrix(1).get(1, 0), &crate::qlinalg::q(1));
    assert!(abelian_target("1,2:swap", &z2).is_err());
    assert!(abelian_target("0", &z2).is_err());
    assert!(abelian_target("1:spin", &z2).is_err());
}

fn setup(group: FiniteGroup, spec: &str) -> (EGComplex, SimplicialQModule) {
    let target = abelian_target(spec, &group).unwrap();
    let eg = build_eg(group, 3).unwrap();
    let model = abelian_mc_model(&target.algebra, Some(&target.action), 3).unwrap();
    (eg, model)
}

#[test]
fn random_maps_are_equivariant_and_simplicial() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (g, spec) in [(FiniteGroup::cyclic(2), "1,1:swap"), (FiniteGroup::symmetric(3), "1,2:sign")] {
        let (eg, model) = setup(g, spec);
        for n in 0..=2 {
            let f = random_map(&eg, &model, n, &mut rng);
            let reports = check_map("f", &eg, &model, &f);
            assert!(all_passed(&reports), "{reports:?}");
        }
        let f = random_map(&eg, &model, 0, &mut rng);
        assert!((1..=3).any(|m| eg.level(m).iter().any(|t| !f.at(t).is_zero())));
    }
}

/// `H(t, k)` read off vertices: the first `k` vertices go to a common point
/// `σ`, the rest stay, and the result is averaged over `σ`.
fn h_by_vertices(eg: &EGComplex, f: &GSimplicialMap, t: &[usize], k: usize) -> SparseVec {
    if k == 0 {
        return f.at(t).clone();
    }
    let order = eg.group().order();
    let mut out = SparseVec::new();
    for s in eg.group().elements() {
        let v: Vec<usize> = eg.vertices(t).iter().enumerate().map(|(i, &v)| if i < k { s } else { v }).collect();
        out.add_scaled(f.at(&eg.from_vertices(&v)), &Scalar::new(1.into(), (order as i64).into()));
    }
    out
}

#[test]
fn h_matches_vertex_description() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (g, spec) in [(FiniteGroup::cyclic(3), "1,2"), (FiniteGroup::symmetric(3), "1,1:swap")] {
        let (eg, model) = setup(g, spec);
        let f = random_map(&eg, &model, 0, &mut rng);
        let h = homotopy_h(&eg, &f, None);
        for m in 0..=3 {
            for t in eg.level(m) {
                for k in 0..=m + 1 {
                    assert_eq!(h.levels[m][&(t.clone(), k)], h_by_vertices(&eg, &f, &t, k), "{t:?} k={k}");
                }
            }
        }
        let reports = check_h(&eg, &model, &f, &h);
        assert!(all_passed(&reports), "{reports:?}");
    }
}

#[test]
fn retraction_endpoints() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (eg, model) = setup(FiniteGroup::cyclic(2), "1,1:swap");
    let big = random_map(&eg, &model, 1, &mut rng);
    let p = retraction_p(&eg, &big);
    assert_eq!(model.act(1, 1, &p), p);
    let ip = inclusion_i(&eg, &model, 1, &p);
    assert_eq!(homotopy_k(&eg, &big, &[0, 0], None), ip);
    assert_eq!(homotopy_k(&eg, &big, &[1, 1], None), big);
    assert_eq!(averaged_symmetrization(&eg, &big), ip);
    assert_eq!(retraction_p(&eg, &ip), p);
}

#[test]
fn verify_retraction_passes() {
    for (g, spec) in [
        (FiniteGroup::cyclic(2), "1,1:swap"),
        (FiniteGroup::cyclic(3), "1"),
        (FiniteGroup::symmetric(3), "1,2:sign"),
    ] {
        let target = abelian_target(spec, &g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let report = verify_retraction(&target, &RetractionOptions::default(), &mut rng).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.to_string().ends_with("all checks pass"));
    }
}

#[test]
fn injected_fault_is_reported_with_a_witness() {
    let target = abelian_target("1,1:swap", &FiniteGroup::cyclic(2)).unwrap();
    let options = RetractionOptions { fault: Some(Fault::HSign), ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let report = verify_retraction(&target, &options, &mut rng).unwrap();
    let fail = report.first_failure().expect("the fault is detected");
    assert!(fail.check.starts_with("H"), "{fail}");
    assert!(!fail.witnesses.is_empty());
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["checks"].as_array().unwrap().len(), report.checks.len());
}

#[test]
fn verify_retraction_respects_caps() {
    let target = abelian_target("1", &FiniteGroup::symmetric(3)).unwrap();
    let options = RetractionOptions { m_max: 6, max_cells: 1000, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(matches!(verify_retraction(&target, &options, &mut rng), Err(crate::Error::Capacity(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]
    #[test]
    fn retraction_holds_for_random_seeds(seed in any::<u64>(), which in 0usize..3) {
        let (g, spec) = [
            (FiniteGroup::cyclic(2), "1,1:swap"),
            (FiniteGroup::cyclic(3), "1,2"),
            (FiniteGroup::cyclic(2), "2:sign"),
        ][which].clone();
        let target = abelian_target(spec, &g).unwrap();
        let options = RetractionOptions { m_max: 3, n_max: 1, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let report = verify_retraction(&target, &options, &mut rng).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }
}
