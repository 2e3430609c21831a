//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact; the only tolerances are the wall-clock budgets
//! below, measured around each criterion.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewcat_core::analysis::{
    brute_force_iip, commutant_linear, commutant_per_formula, is_maximal_commutative, FnAlgebra,
    DEFAULT_IIP_CAP, DEFAULT_LINEAR_CAP,
};
use skewcat_core::instances::{
    const0_monoid, example19_discrete, random_instance, single_arrow_system, swap_system, trivial_z2_on_point,
    z4_through_z2, Profile, DEFAULT_MAX_DIM,
};
use skewcat_core::nmonoid::prop9b_counterexample;
use skewcat_core::reproduce::example19_symbolic;
use skewcat_core::{FinDynSys, FunctionRingSpec, LinearModel, ScalarKind, SkewAlgebra, SkewElem};

const BUDGET_SYMBOLIC: Duration = Duration::from_secs(1);
const BUDGET_DISCRETE: Duration = Duration::from_secs(5);
const BUDGET_TRUNCATED: Duration = Duration::from_secs(2);
const BUDGET_FREENESS: Duration = Duration::from_secs(60);
const BUDGET_IIP: Duration = Duration::from_secs(120);
const BUDGET_ORACLES: Duration = Duration::from_secs(30);

const FREENESS_PER_CELL: u64 = 100;
const IIP_PER_PROFILE: usize = 20;
const IIP_MAX_DIM: usize = 16;
const SET_IDENTITY_CHECKS: usize = 1000;
const LAW_TRIPLES: usize = 1000;
const UNIT_ELEMENTS: usize = 100;
const TRUNCATION_DEGREE: u64 = 8;
const TRUNCATION_SAMPLES: usize = 100;
const TRUNCATION_SEED: u64 = 9;

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
            notes: Vec::new(),
        }
    }
}

fn algebra(sys: FinDynSys, kind: ScalarKind) -> FnAlgebra {
    SkewAlgebra::new(FunctionRingSpec::new(sys, kind).expect("valid system"))
}

fn run_cli(args: &[&str]) -> (i32, BTreeMap<String, String>) {
    let out = Command::new(env!("CARGO_BIN_EXE_skewcat"))
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 report");
    let keys = text
        .lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    (out.status.code().unwrap_or(-1), keys)
}

fn within(start: Instant, budget: Duration) -> (bool, String) {
    let elapsed = start.elapsed();
    (elapsed <= budget, format!("{:.2}s/{:.0}s", elapsed.as_secs_f64(), budget.as_secs_f64()))
}

fn symbolic_product() -> Outcome {
    let start = Instant::now();
    let (code, keys) = run_cli(&["reproduce", "example19"]);
    let report = example19_symbolic().expect("fixture");
    let matched = report.coefficients.iter().filter(|c| c.matches).count();
    let cli_ok = code == 0
        && keys.get("match").map(String::as_str) == Some("true")
        && keys.keys().filter(|k| k.ends_with(".match")).count() == 5;
    let (fast, time) = within(start, BUDGET_SYMBOLIC);
    let pass = report.matches() && report.coefficients.len() == 5 && cli_ok && fast;
    let mut out = Outcome::new(
        pass,
        format!("{matched}/5 coefficients exact, cli exit {code}, {time}"),
    );
    for c in report.coefficients.iter().filter(|c| !c.matches) {
        out.notes.push(format!("u[{}]: computed {} expected {}", c.morphism, c.computed, c.expected));
    }
    out
}

fn discrete_model() -> Outcome {
    let start = Instant::now();
    let (code, keys) = run_cli(&["reproduce", "example19-discrete"]);
    let (fast, time) = within(start, BUDGET_DISCRETE);
    let expected = [
        ("top_free", "false"),
        ("max_comm", "false"),
        ("iip", "false"),
        ("iip_candidates", "8191"),
        ("commutant_dim", "7"),
        ("ideal_abs_dim", "8"),
        ("ideal_abs_meet_a_dim", "0"),
        ("ideal_abs_is_span_abs_sqr_sqrt", "true"),
    ];
    let mut notes = Vec::new();
    for (key, want) in expected {
        let got = keys.get(key).map(String::as_str).unwrap_or("<missing>");
        let verdict = if got == want { "pass" } else { "fail" };
        notes.push(format!("check.{key}={verdict}:expected {want}, computed {got}"));
    }
    let failures = notes.iter().filter(|n| n.contains("=fail")).count();
    if let Some(w) = keys.get("witness") {
        notes.push(format!("witness={w}"));
    }
    Outcome {
        pass: failures == 0 && code == 0 && fast,
        detail: format!("{failures} of {} checks failed, cli exit {code}, {time}", expected.len()),
        notes,
    }
}

fn truncated_monoid() -> Outcome {
    let start = Instant::now();
    let report = prop9b_counterexample(TRUNCATION_DEGREE, TRUNCATION_SAMPLES, TRUNCATION_SEED).expect("valid bound");
    let (fast, time) = within(start, BUDGET_TRUNCATED);
    let moved = report.sigma_images.len() as u64 == TRUNCATION_DEGREE && report.sigma_moves_x();
    Outcome::new(
        moved && report.zero_u0 == TRUNCATION_SAMPLES && fast,
        format!(
            "sigma(n)(X) != X for n=1..{}: {moved}, zero u_0 in {}/{} products, {time}",
            TRUNCATION_DEGREE, report.zero_u0, report.samples
        ),
    )
}

fn freeness_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut notes = Vec::new();
    let profiles = [Profile::GroupAction, Profile::MultiObjectGroupoid, Profile::TransformationMonoid];
    for profile in profiles {
        for kind in [ScalarKind::Zmod(2), ScalarKind::Rational] {
            for seed in 0..FREENESS_PER_CELL {
                let sys = random_instance(seed, profile, DEFAULT_MAX_DIM);
                let free = sys.is_topologically_free().free;
                let max = is_maximal_commutative(&algebra(sys, kind), DEFAULT_LINEAR_CAP).expect("within cap");
                checked += 1;
                if free != max.value() || !max.agree() {
                    notes.push(format!("{profile} {kind} seed {seed}: top_free={free} max_comm={}", max.value()));
                }
            }
        }
    }
    let (fast, time) = within(start, BUDGET_FREENESS);
    Outcome {
        pass: notes.is_empty() && checked == 600 && fast,
        detail: format!("{} discrepancies in {checked} instances, {time}", notes.len()),
        notes,
    }
}

/// Seeds whose instance stays within the exhaustive enumeration cap.
fn small_seeds(profile: Profile, want: usize) -> Vec<(u64, FinDynSys)> {
    (0..)
        .map(|seed| (seed, random_instance(seed, profile, IIP_MAX_DIM)))
        .filter(|(_, sys)| sys.algebra_dimension() <= IIP_MAX_DIM.min(DEFAULT_IIP_CAP))
        .take(want)
        .collect()
}

fn intersection_property() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut violations = 0;
    let mut counts = BTreeMap::new();
    let mut free_without_iip = Vec::new();
    for profile in Profile::ALL {
        for (seed, sys) in small_seeds(profile, IIP_PER_PROFILE) {
            let alg = algebra(sys, ScalarKind::Zmod(2));
            let max = is_maximal_commutative(&alg, DEFAULT_LINEAR_CAP).expect("within cap").value();
            let model = LinearModel::new(&alg, DEFAULT_IIP_CAP).expect("within cap");
            let iip = brute_force_iip(&model).expect("finite field").holds;
            let groupoid = alg.category().is_groupoid().is_some();
            *counts.entry(if groupoid { "groupoid" } else { "monoid" }).or_insert(0) += 1;
            let bad = if groupoid { iip != max } else { iip && !max };
            if bad {
                violations += 1;
                notes.push(format!("{profile} seed {seed}: iip={iip} max_comm={max}"));
            }
            if max && !iip {
                free_without_iip.push(format!("{profile}:{seed}"));
            }
        }
    }
    let (fast, time) = within(start, BUDGET_IIP);
    let groupoids = counts.get("groupoid").copied().unwrap_or(0);
    let monoids = counts.get("monoid").copied().unwrap_or(0);
    notes.push(format!(
        "maximal commutative without the intersection property: {}",
        if free_without_iip.is_empty() { "none".to_string() } else { free_without_iip.join(",") }
    ));
    Outcome {
        pass: violations == 0 && groupoids >= 20 && monoids >= 20 && fast,
        detail: format!("{violations} violations over {groupoids} groupoid and {monoids} monoid instances, {time}"),
        notes,
    }
}

fn suite_instances() -> Vec<(String, FinDynSys)> {
    let mut out: Vec<(String, FinDynSys)> = vec![
        ("example19".into(), example19_discrete()),
        ("swap".into(), swap_system()),
        ("trivial".into(), trivial_z2_on_point()),
        ("z4".into(), z4_through_z2()),
        ("const0".into(), const0_monoid()),
        ("single_arrow".into(), single_arrow_system()),
    ];
    for profile in Profile::ALL {
        for seed in 0..FREENESS_PER_CELL {
            out.push((format!("{profile}:{seed}"), random_instance(seed, profile, DEFAULT_MAX_DIM)));
        }
    }
    out
}

fn commutant_oracles() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut notes = Vec::new();
    for (name, sys) in suite_instances() {
        if sys.algebra_dimension() > DEFAULT_LINEAR_CAP {
            continue;
        }
        for kind in [ScalarKind::Zmod(2), ScalarKind::Zmod(3), ScalarKind::Rational] {
            let alg = algebra(sys.clone(), kind);
            let model = LinearModel::new(&alg, DEFAULT_LINEAR_CAP).expect("within cap");
            let formula = commutant_per_formula(&alg).expect("field");
            let linear = commutant_linear(&model).expect("field");
            checked += 1;
            if formula != linear {
                notes.push(format!("{name} over {kind}: dims {} vs {}", formula.dim(), linear.dim()));
            }
        }
    }
    let (fast, time) = within(start, BUDGET_ORACLES);
    Outcome {
        pass: notes.is_empty() && fast,
        detail: format!("{} mismatches in {checked} instance/field pairs, {time}", notes.len()),
        notes,
    }
}

fn set_identities() -> Outcome {
    let mut checks = 0;
    let mut notes = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    while checks < SET_IDENTITY_CHECKS {
        let profile = Profile::ALL[rng.gen_range(0..Profile::ALL.len())];
        let sys = random_instance(rng.gen(), profile, DEFAULT_MAX_DIM);
        let kind = [ScalarKind::Zmod(2), ScalarKind::Zmod(4), ScalarKind::Rational][rng.gen_range(0..3)];
        let ring = if rng.gen_bool(0.25) {
            FunctionRingSpec::constants_only(sys.clone(), kind)
        } else {
            FunctionRingSpec::new(sys.clone(), kind)
        }
        .expect("valid system");
        let cat = sys.category();
        for e in 0..cat.object_count() {
            for n in cat.endomorphisms(e) {
                checks += 1;
                for (label, holds) in sys.set_identities(&ring, e, n).expect("endomorphism") {
                    if !holds {
                        notes.push(format!("{profile} {kind} ({}, {}): {label}", cat.object_name(e), cat.morphism_name(n)));
                    }
                }
            }
        }
    }
    Outcome {
        pass: notes.is_empty(),
        detail: format!("{} failures over {checks} (object, endomorphism) checks", notes.len()),
        notes,
    }
}

fn algebra_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let kinds = [ScalarKind::Zmod(2), ScalarKind::Zmod(3), ScalarKind::Zmod(4), ScalarKind::Rational];
    let mut failures = Vec::new();
    let (mut triples, mut groupoid_pairs, mut units) = (0, 0, 0);
    while triples < LAW_TRIPLES {
        let profile = Profile::ALL[triples % Profile::ALL.len()];
        let alg = algebra(random_instance(rng.gen(), profile, DEFAULT_MAX_DIM), kinds[rng.gen_range(0..4)]);
        let density = rng.gen_range(0.2..0.8);
        let x = alg.random_element(&mut rng, density);
        let y = alg.random_element(&mut rng, density);
        let z = alg.random_element(&mut rng, density);
        let m = |a: &SkewElem<_>, b: &SkewElem<_>| alg.mul(a, b).expect("same algebra");
        let s = |a: &SkewElem<_>, b: &SkewElem<_>| alg.add(a, b).expect("same algebra");
        triples += 1;
        if m(&m(&x, &y), &z) != m(&x, &m(&y, &z)) {
            failures.push(format!("associativity, {profile} triple {triples}"));
        }
        if m(&x, &s(&y, &z)) != s(&m(&x, &y), &m(&x, &z)) || m(&s(&x, &y), &z) != s(&m(&x, &z), &m(&y, &z)) {
            failures.push(format!("distributivity, {profile} triple {triples}"));
        }
        if alg.inverse_table().is_some() {
            groupoid_pairs += 1;
            if alg.mul_groupoid(&x, &y).expect("groupoid") != m(&x, &y) {
                failures.push(format!("groupoid formula, {profile} triple {triples}"));
            }
        }
        if units < UNIT_ELEMENTS {
            units += 1;
            let one = alg.identity();
            if m(&one, &x) != x || m(&x, &one) != x {
                failures.push(format!("identity, {profile} triple {triples}"));
            }
            if !x.is_zero() {
                let l = alg.left_unit(&x).expect("nonzero");
                let r = alg.right_unit(&x).expect("nonzero");
                if m(&l, &x) != x || m(&x, &r) != x || m(&l, &l) != l || m(&r, &r) != r {
                    failures.push(format!("local units, {profile} triple {triples}"));
                }
            }
        }
    }
    Outcome {
        pass: failures.is_empty() && groupoid_pairs > 0 && units >= UNIT_ELEMENTS,
        detail: format!(
            "{} failures: {triples} triples, {groupoid_pairs} groupoid products, {units} unit elements",
            failures.len()
        ),
        notes: failures,
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("symbolic product of the two five-term elements", symbolic_product),
        ("discrete three-point model over F2", discrete_model),
        ("truncated monoid algebra over Q[X]", truncated_monoid),
        ("freeness iff maximal commutativity", freeness_equivalence),
        ("intersection property by brute force", intersection_property),
        ("commutant oracles agree", commutant_oracles),
        ("fixed and moved point identities", set_identities),
        ("multiplication laws and local units", algebra_laws),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name}: {}", i + 1, outcome.detail);
        for note in &outcome.notes {
            println!("    {note}");
        }
        if !outcome.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 8 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
