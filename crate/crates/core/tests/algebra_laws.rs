use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewcat_core::analysis::{left_unit_solutions, right_unit_solutions, unit_ambiguity, FnAlgebra, LinearModel, DEFAULT_LINEAR_CAP};
use skewcat_core::instances::{example19_discrete, example19_formal, random_instance, Profile, DEFAULT_MAX_DIM};
use skewcat_core::{FormalElem, FunctionRingSpec, ScalarKind, SkewAlgebra, SkewElem};

fn algebra(seed: u64, profile: Profile, kind: ScalarKind) -> FnAlgebra {
    let sys = random_instance(seed, profile, DEFAULT_MAX_DIM);
    SkewAlgebra::new(FunctionRingSpec::new(sys, kind).unwrap())
}

fn kinds() -> impl Strategy<Value = ScalarKind> {
    prop_oneof![
        Just(ScalarKind::Rational),
        Just(ScalarKind::Zmod(2)),
        Just(ScalarKind::Zmod(3)),
        Just(ScalarKind::Zmod(4)),
    ]
}

fn profiles() -> impl Strategy<Value = Profile> {
    prop::sample::select(Profile::ALL.to_vec())
}

proptest! {
    #[test]
    fn multiplication_is_associative_and_distributive(
        seed in 0u64..1000,
        profile in profiles(),
        kind in kinds(),
        sample in any::<u64>(),
    ) {
        let alg = algebra(seed, profile, kind);
        let mut rng = ChaCha8Rng::seed_from_u64(sample);
        let density = rng.gen_range(0.2..0.8);
        let x = alg.random_element(&mut rng, density);
        let y = alg.random_element(&mut rng, density);
        let z = alg.random_element(&mut rng, density);
        let m = |a: &SkewElem<_>, b: &SkewElem<_>| alg.mul(a, b).unwrap();
        let s = |a: &SkewElem<_>, b: &SkewElem<_>| alg.add(a, b).unwrap();
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &s(&y, &z)), s(&m(&x, &y), &m(&x, &z)));
        prop_assert_eq!(m(&s(&x, &y), &z), s(&m(&x, &z), &m(&y, &z)));
        prop_assert!(alg.grading_check(&x, &y));
    }

    #[test]
    fn groupoid_formula_agrees(
        seed in 0u64..1000,
        groupoid in prop::sample::select(vec![Profile::GroupAction, Profile::MultiObjectGroupoid]),
        kind in kinds(),
        sample in any::<u64>(),
    ) {
        let alg = algebra(seed, groupoid, kind);
        let mut rng = ChaCha8Rng::seed_from_u64(sample);
        let x = alg.random_element(&mut rng, 0.5);
        let y = alg.random_element(&mut rng, 0.5);
        prop_assert_eq!(alg.mul(&x, &y).unwrap(), alg.mul_groupoid(&x, &y).unwrap());
    }

    #[test]
    fn identity_and_local_units(
        seed in 0u64..1000,
        profile in profiles(),
        kind in kinds(),
        sample in any::<u64>(),
    ) {
        let alg = algebra(seed, profile, kind);
        let mut rng = ChaCha8Rng::seed_from_u64(sample);
        let x = alg.random_element(&mut rng, 0.5);
        let one = alg.identity();
        prop_assert_eq!(alg.mul(&one, &x).unwrap(), x.clone());
        prop_assert_eq!(alg.mul(&x, &one).unwrap(), x.clone());
        if !x.is_zero() {
            let l = alg.left_unit(&x).unwrap();
            let r = alg.right_unit(&x).unwrap();
            prop_assert_eq!(alg.mul(&l, &x).unwrap(), x.clone());
            prop_assert_eq!(alg.mul(&x, &r).unwrap(), x.clone());
            prop_assert_eq!(alg.mul(&l, &l).unwrap(), l);
        }
    }

    #[test]
    fn vector_round_trip(seed in 0u64..500, profile in profiles(), sample in any::<u64>()) {
        let alg = algebra(seed, profile, ScalarKind::Zmod(3));
        let coords = alg.coordinates();
        let mut rng = ChaCha8Rng::seed_from_u64(sample);
        let x = alg.random_element(&mut rng, 0.5);
        prop_assert_eq!(alg.from_vector(&coords, &alg.to_vector(&coords, &x)), x);
    }

    #[test]
    fn formal_multiplication_is_associative(picks in prop::collection::vec((0usize..5, 0usize..10, -2i64..3), 1..6)) {
        let alg = SkewAlgebra::new(example19_formal());
        let sys = alg.system();
        let cat = alg.category();
        let symbols: Vec<(String, usize)> = sys.symbols().map(|(n, h)| (n.to_string(), h)).collect();
        let mut parts: Vec<SkewElem<FormalElem>> = vec![alg.zero(), alg.zero(), alg.zero()];
        for (k, (n, s, c)) in picks.into_iter().enumerate() {
            let (name, home) = &symbols[s];
            let morphisms: Vec<usize> = (0..cat.morphism_count()).filter(|&m| cat.cod(m) == *home).collect();
            let m = morphisms[n % morphisms.len()];
            let a = sys.symbol(name).unwrap().scale(&BigRational::from_integer(c.into()));
            let term = alg.term(a, m).unwrap();
            parts[k % 3] = alg.add(&parts[k % 3], &term).unwrap();
        }
        let (x, y, z) = (&parts[0], &parts[1], &parts[2]);
        let left = alg.mul(&alg.mul(x, y).unwrap(), z).unwrap();
        let right = alg.mul(x, &alg.mul(y, z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

/// Left units are unique only when every object is a codomain of the element.
#[test]
fn local_units_are_not_unique_in_general() {
    let alg: FnAlgebra = SkewAlgebra::new(FunctionRingSpec::new(example19_discrete(), ScalarKind::Zmod(2)).unwrap());
    let model = LinearModel::new(&alg, DEFAULT_LINEAR_CAP).unwrap();
    let cat = alg.category();
    let x_obj = cat.object_index("X").unwrap();
    let only_x = [x_obj].into_iter().collect();
    assert!(!unit_ambiguity(&model, &only_x, true).is_zero());
    let everything = (0..cat.object_count()).collect();
    assert!(unit_ambiguity(&model, &everything, true).is_zero());
    assert!(unit_ambiguity(&model, &everything, false).is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..20 {
        let x = alg.random_element(&mut rng, 0.4);
        if x.is_zero() {
            continue;
        }
        let (l, kernel) = left_unit_solutions(&model, &x).unwrap();
        assert_eq!(l, alg.left_unit(&x).unwrap());
        assert_eq!(kernel, unit_ambiguity(&model, &alg.cod(&x), true));
        let (r, kernel) = right_unit_solutions(&model, &x).unwrap();
        assert_eq!(r, alg.right_unit(&x).unwrap());
        assert_eq!(kernel, unit_ambiguity(&model, &alg.dom(&x), false));
    }
}
