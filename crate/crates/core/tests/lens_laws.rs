use glens::catkit::{check_category_laws, commutative_square, discrete, walking_arrow};
use glens::comonoid::{
    check_comonoid, check_smc_laws, cokleisli_indexed, enumerate_comonoids, tensor_comonoid, Comonoid,
    FinSetCartesian, FinSetCocartesianOp, Smc,
};
use glens::finset::{all_maps, FinFn};
use glens::indexed::{check_indexed_laws, check_tfae_iso, groth_cov, lens_category, IndexedCat};
use glens::instances::{
    bundle_to_family, check_adjoint_triple, check_dep_interchange, check_prism_direct, composable_pairs,
    coslice_indexed, families_up_to, family_to_bundle, prism_category, pullback_coherent, slice_indexed,
    ClassicLensMor, ClassicLensOb, DepLens, FiberFamily,
};
use glens::Limit;
use proptest::prelude::*;

fn cartesian_comonoids(max: usize) -> Vec<Comonoid<FinFn>> {
    (0..=max)
        .flat_map(|c| enumerate_comonoids(&FinSetCartesian, c, Limit::default()).unwrap())
        .collect()
}

#[test]
fn slice_reindexing_is_strict() {
    let s = slice_indexed(2, Limit::default()).unwrap();
    let report = check_indexed_laws(&s.indexed);
    assert!(report.is_pass(), "{:?}", report.violations.first());
}

#[test]
fn pullback_square_agrees_with_family_reindexing() {
    let mut checked = 0;
    for total in 0..=3 {
        for base in 0..=2 {
            for p in all_maps(total, base) {
                for c in 0..=2 {
                    for f in all_maps(c, base) {
                        assert!(pullback_coherent(&p, &f).unwrap(), "{p:?} along {f:?}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn bundles_and_families_round_trip() {
    for fam in families_up_to(3, 2) {
        let bundle = family_to_bundle(&fam);
        assert_eq!(bundle_to_family(&bundle).0, fam);
    }
}

#[test]
fn adjoint_triple_with_larger_fibers() {
    for a in 0..=2 {
        for b in 0..=2 {
            for f in all_maps(a, b) {
                assert!(check_adjoint_triple(&f, 3).unwrap().is_pass());
            }
        }
    }
}

#[test]
fn every_in_scope_lens_category_is_a_category_and_tfae_holds() {
    let sizes: Vec<usize> = (0..=2).collect();
    let ck = cokleisli_indexed(&FinSetCartesian, &cartesian_comonoids(2), &sizes, Limit::default()).unwrap();
    let instances: Vec<(&str, IndexedCat)> = vec![
        ("slice", slice_indexed(2, Limit::default()).unwrap().indexed),
        ("coslice arrow", coslice_indexed(&walking_arrow()).unwrap().indexed),
        ("coslice square", coslice_indexed(&commutative_square()).unwrap().indexed),
        ("cokleisli", ck.indexed),
        ("constant", IndexedCat::constant(walking_arrow(), commutative_square())),
    ];
    for (name, f) in &instances {
        let lens = lens_category(f).unwrap();
        assert!(check_category_laws(lens.category()).is_pass(), "{name}");
        check_tfae_iso(f).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn covariant_construction_of_constant_terminal_is_the_base() {
    for base in [walking_arrow(), commutative_square(), discrete(3)] {
        let f = IndexedCat::constant_terminal(base.clone());
        let total = groth_cov(&f.read_covariantly()).unwrap();
        assert_eq!(total.category().n_objects(), base.n_objects());
        assert_eq!(total.category().n_morphisms(), base.n_morphisms());
    }
}

#[test]
fn cokleisli_fibers_obey_laws() {
    let sizes: Vec<usize> = (0..=2).collect();
    let ck = cokleisli_indexed(&FinSetCartesian, &cartesian_comonoids(2), &sizes, Limit::default()).unwrap();
    for fiber in &ck.fibers {
        assert!(check_category_laws(fiber.category()).is_pass());
    }
    assert!(check_indexed_laws(&ck.indexed).is_pass());
}

#[test]
fn comonoid_uniqueness_for_both_builtins() {
    for c in 0..=3 {
        assert_eq!(enumerate_comonoids(&FinSetCartesian, c, Limit::default()).unwrap().len(), 1);
        assert_eq!(enumerate_comonoids(&FinSetCocartesianOp, c, Limit::default()).unwrap().len(), 1);
    }
}

#[test]
fn tensor_of_comonoids_is_the_comonoid_on_the_tensor() {
    let m = FinSetCartesian;
    let ks = cartesian_comonoids(2);
    for a in &ks {
        for b in &ks {
            let t = tensor_comonoid(&m, a, b).unwrap();
            assert!(check_comonoid(&m, &t).unwrap().is_pass());
            let on_product = enumerate_comonoids(&m, m.tensor_ob(a.carrier, b.carrier), Limit::default()).unwrap();
            assert_eq!(on_product, vec![t]);
        }
    }
}

#[test]
fn builtin_monoidal_structures_obey_laws() {
    let objects = [0, 1, 2];
    assert!(check_smc_laws(&FinSetCartesian, &objects, Limit::default()).unwrap().is_pass());
    assert!(check_smc_laws(&FinSetCocartesianOp, &objects, Limit::default()).unwrap().is_pass());
}

#[test]
fn prisms_compose_by_the_direct_formula() {
    let cat = prism_category(2, Limit::default()).unwrap();
    assert!(check_prism_direct(&cat).unwrap().is_pass());
}

#[test]
#[ignore = "exhaustive over 2.4e9 quadruples; about 45 minutes on one core"]
fn interchange_exhaustive_at_size_two() {
    let pairs = composable_pairs(&families_up_to(2, 2)).unwrap();
    assert!(check_dep_interchange(&pairs, &pairs).unwrap().is_pass());
}

// nonempty bases and fibers, so that every hom-set is inhabited
fn family(max_base: usize, max_fiber: usize) -> impl Strategy<Value = FiberFamily> {
    proptest::collection::vec(1..=max_fiber, 1..=max_base).prop_map(FiberFamily::from_fibers)
}

fn dep_lens_between(x: FiberFamily, y: FiberFamily) -> impl Strategy<Value = DepLens> {
    let all = DepLens::all_between(&x, &y).unwrap();
    proptest::sample::select(all)
}

fn dep_chain() -> impl Strategy<Value = (DepLens, DepLens, DepLens)> {
    (family(3, 2), family(3, 2), family(3, 2), family(3, 2)).prop_flat_map(|(a, b, c, d)| {
        (dep_lens_between(a, b.clone()), dep_lens_between(b, c.clone()), dep_lens_between(c, d))
    })
}

fn classic_between(s: ClassicLensOb, t: ClassicLensOb) -> impl Strategy<Value = ClassicLensMor> {
    let get = proptest::collection::vec(0..t.c.max(1), s.c);
    let put = proptest::collection::vec(0..s.x.max(1), s.c * t.x);
    (get, put).prop_filter_map("empty hom-set", move |(g, p)| {
        let get = FinFn::new(s.c, t.c, g).ok()?;
        let put = FinFn::new(s.c * t.x, s.x, p).ok()?;
        ClassicLensMor::new(s, t, get, put).ok()
    })
}

fn classic_chain() -> impl Strategy<Value = (ClassicLensMor, ClassicLensMor, ClassicLensMor)> {
    let ob = || (1..=3usize, 1..=3usize).prop_map(|(c, x)| ClassicLensOb::new(c, x));
    (ob(), ob(), ob(), ob()).prop_flat_map(|(a, b, c, d)| {
        (classic_between(a, b), classic_between(b, c), classic_between(c, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dependent_lens_composition_is_associative((f, g, h) in dep_chain()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(DepLens::identity(&f.source).compose(&f).unwrap(), f.clone());
    }

    #[test]
    fn dependent_interchange_beyond_size_two((a1, c1, _) in dep_chain(), (b1, d1, _) in dep_chain()) {
        let lhs = a1.tensor(&b1).compose(&c1.tensor(&d1)).unwrap();
        let rhs = a1.compose(&c1).unwrap().tensor(&b1.compose(&d1).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classic_lens_composition_is_associative((f, g, h) in classic_chain()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(ClassicLensMor::identity(f.source).compose(&f).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&ClassicLensMor::identity(f.target)).unwrap(), f);
    }

    #[test]
    fn classic_tensor_interchanges((f, g, _) in classic_chain(), (h, k, _) in classic_chain()) {
        let lhs = f.tensor(&h).compose(&g.tensor(&k)).unwrap();
        let rhs = f.compose(&g).unwrap().tensor(&h.compose(&k).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
