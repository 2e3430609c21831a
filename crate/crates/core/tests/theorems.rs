use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skewcat_core::analysis::{
    annihilator_criterion, brute_force_iip, check_theorems, commutant_linear, commutant_per_formula,
    divisible_obstruction, falsify_iip, ideal_generated, intersect_with_a, is_maximal_commutative,
    is_subring, is_two_sided_ideal, Decision, DEFAULT_LINEAR_CAP,
};
use skewcat_core::instances::{
    const0_monoid, random_instance, single_arrow_system, swap_system, trivial_z2_on_point, z4_through_z2, Profile,
    DEFAULT_MAX_DIM,
};
use skewcat_core::nmonoid::prop9b_counterexample;
use skewcat_core::{FinDynSys, FnAlgebra, FunctionRingSpec, LinearModel, ScalarKind, SkewAlgebra, TheoremOptions};

fn algebra(sys: FinDynSys, kind: ScalarKind) -> FnAlgebra {
    SkewAlgebra::new(FunctionRingSpec::new(sys, kind).unwrap())
}

fn profiles() -> impl Strategy<Value = Profile> {
    prop::sample::select(Profile::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn commutant_oracles_agree(
        seed in 0u64..1000,
        profile in profiles(),
        kind in prop::sample::select(vec![ScalarKind::Zmod(2), ScalarKind::Zmod(3), ScalarKind::Rational]),
    ) {
        let alg = algebra(random_instance(seed, profile, DEFAULT_MAX_DIM), kind);
        let model = LinearModel::new(&alg, DEFAULT_LINEAR_CAP).unwrap();
        let formula = commutant_per_formula(&alg).unwrap();
        let linear = commutant_linear(&model).unwrap();
        prop_assert_eq!(&formula, &linear);
        prop_assert!(model.a_subspace().is_subspace_of(&formula));
        prop_assert!(is_subring(&model, &formula));
        let report = is_maximal_commutative(&alg, DEFAULT_LINEAR_CAP).unwrap();
        prop_assert!(report.agree());
        prop_assert_eq!(report.value(), formula == model.a_subspace());
    }

    #[test]
    fn generated_ideals_are_closed(seed in 0u64..1000, profile in profiles(), sample in any::<u64>()) {
        let alg = algebra(random_instance(seed, profile, 20), ScalarKind::Zmod(2));
        let model = LinearModel::new(&alg, DEFAULT_LINEAR_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(sample);
        let x = alg.random_element(&mut rng, 0.3);
        let ideal = ideal_generated(&model, &[x.clone()]);
        prop_assert!(is_two_sided_ideal(&model, &ideal));
        prop_assert!(ideal.contains(&model.to_vector(&x)));
        prop_assert_eq!(ideal.is_zero(), x.is_zero());
        let meet = intersect_with_a(&model, &ideal);
        prop_assert!(meet.is_subspace_of(&ideal) && meet.is_subspace_of(&model.a_subspace()));
    }

    /// Over an integral domain freeness and maximal commutativity coincide.
    #[test]
    fn freeness_iff_maximal_commutativity(
        seed in 0u64..5000,
        profile in profiles(),
        kind in prop::sample::select(vec![ScalarKind::Zmod(2), ScalarKind::Zmod(5), ScalarKind::Rational]),
    ) {
        let sys = random_instance(seed, profile, DEFAULT_MAX_DIM);
        let free = sys.is_topologically_free().free;
        let alg = algebra(sys, kind);
        prop_assert_eq!(is_maximal_commutative(&alg, DEFAULT_LINEAR_CAP).unwrap().value(), free);
    }

    #[test]
    fn obstruction_refutes_maximal_commutativity(seed in 0u64..2000, profile in profiles()) {
        let sys = random_instance(seed, profile, DEFAULT_MAX_DIM);
        if divisible_obstruction(&sys).is_some() {
            let alg = algebra(sys, ScalarKind::Zmod(2));
            prop_assert!(!is_maximal_commutative(&alg, DEFAULT_LINEAR_CAP).unwrap().value());
        }
    }

    /// The annihilator route over `Z/4` agrees with the fixed point route.
    #[test]
    fn z4_routes_agree(seed in 0u64..1000, profile in profiles()) {
        let sys = random_instance(seed, profile, 16);
        let free = sys.is_topologically_free().free;
        let spec = FunctionRingSpec::new(sys, ScalarKind::Zmod(4)).unwrap();
        prop_assert_eq!(annihilator_criterion(&spec).unwrap(), free);
    }
}

#[test]
fn ideal_intersection_implications_on_small_instances() {
    let options = TheoremOptions::default();
    let mut decided = 0;
    for profile in [Profile::GroupAction, Profile::MultiObjectGroupoid, Profile::TransformationMonoid] {
        for seed in 0..12 {
            let alg = algebra(random_instance(seed, profile, 12), ScalarKind::Zmod(2));
            let verdict = check_theorems(&alg, &options).unwrap();
            assert!(verdict.consistent(), "{profile} {seed}: {:?}", verdict.failed());
            if let Decision::Decided(iip) = verdict.iip {
                decided += 1;
                let max_comm = verdict.max_comm;
                if iip {
                    assert!(max_comm, "{profile} {seed}");
                }
                if profile.is_groupoid() {
                    assert_eq!(iip, max_comm, "{profile} {seed}");
                }
            }
        }
    }
    assert_eq!(decided, 36);
}

#[test]
fn fixture_verdicts() {
    let options = TheoremOptions::default();
    let triple = |sys: FinDynSys| {
        let v = check_theorems(&algebra(sys, ScalarKind::Zmod(2)), &options).unwrap();
        assert!(v.consistent());
        (v.top_free, v.max_comm, v.iip.value().unwrap())
    };
    assert_eq!(triple(swap_system()), (true, true, true));
    assert_eq!(triple(trivial_z2_on_point()), (false, false, false));
    assert_eq!(triple(const0_monoid()), (false, false, false));
    // a free system with an ideal missing A: maximal commutativity does not
    // force the intersection property outside groupoids
    assert_eq!(triple(single_arrow_system()), (true, true, false));
}

#[test]
fn divisible_obstructions() {
    let sys = const0_monoid();
    let (e, x) = divisible_obstruction(&sys).unwrap();
    assert_eq!(sys.point_label(e, x), "0");
    assert!(divisible_obstruction(&z4_through_z2()).is_some());
    assert!(divisible_obstruction(&swap_system()).is_none());
}

#[test]
fn trivial_group_algebra_ideal() {
    let alg = algebra(trivial_z2_on_point(), ScalarKind::Zmod(2));
    let model = LinearModel::new(&alg, DEFAULT_LINEAR_CAP).unwrap();
    let g = alg.category().morphism_index("g").unwrap();
    let x = alg.add(&alg.identity(), &alg.unit_term(g)).unwrap();
    let ideal = ideal_generated(&model, &[x]);
    assert_eq!(ideal.dim(), 1);
    assert!(intersect_with_a(&model, &ideal).is_zero());
    assert_eq!(ideal_generated(&model, &[alg.identity()]), model.whole());
    assert!(!brute_force_iip(&model).unwrap().holds);
}

#[test]
fn rational_search_finds_no_counterexample_when_iip_holds() {
    let alg = algebra(swap_system(), ScalarKind::Rational);
    let model = LinearModel::new(&alg, DEFAULT_LINEAR_CAP).unwrap();
    assert!(falsify_iip(&model).is_none());
    let alg = algebra(trivial_z2_on_point(), ScalarKind::Rational);
    let model = LinearModel::new(&alg, DEFAULT_LINEAR_CAP).unwrap();
    assert!(falsify_iip(&model).is_some());
}

#[test]
fn truncated_monoid_counterexample() {
    let report = prop9b_counterexample(8, 100, 9).unwrap();
    assert!(report.sigma_moves_x());
    assert_eq!(report.zero_u0, 100);
    assert_eq!(report.sigma_images.len(), 8);
}
