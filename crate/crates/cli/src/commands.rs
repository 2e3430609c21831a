//! Command implementations. Each returns a [`Report`] of `key=value` lines.

use rayon::prelude::*;

use skewcat_core::analysis::{
    brute_force_iip, check_theorems, commutant_linear, commutant_per_formula, divisible_obstruction,
    falsify_iip, ideal_generated, intersect_with_a, is_maximal_commutative, is_two_sided_ideal,
    DEFAULT_IIP_CAP, DEFAULT_LINEAR_CAP,
};
use skewcat_core::instances::{random_instance, Profile, DEFAULT_MAX_DIM};
use skewcat_core::nmonoid::prop9b_counterexample;
use skewcat_core::reproduce::{example19_discrete_report, example19_symbolic};
use skewcat_core::{
    FinDynSys, FnAlgebra, FnRingElem, FunctionRingSpec, LinearModel, ScalarKind, SkewAlgebra, SkewElem,
    TheoremOptions,
};

use crate::literal::{parse_fn_element, parse_formal_element};
use crate::parse::{parse_system, CoeffSpec, ParseError, Source, SystemFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    /// Written to stderr, so stdout stays identical across cap overrides.
    pub warnings: Vec<String>,
    pub exit: i32,
}

impl Default for Report {
    fn default() -> Self {
        Self {
            lines: Vec::new(),
            warnings: Vec::new(),
            exit: EXIT_OK,
        }
    }
}

impl Report {
    pub fn push(&mut self, key: impl AsRef<str>, value: impl std::fmt::Display) {
        self.lines.push(format!("{}={}", key.as_ref(), value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
    }

    fn fail(&mut self, witness: impl std::fmt::Display) {
        self.push("witness", witness);
        if self.exit == EXIT_OK {
            self.exit = EXIT_FAILED;
        }
    }

    fn invalid(mut self, message: impl std::fmt::Display) -> Self {
        self.push("error", message);
        self.exit = EXIT_INVALID;
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// Resolves a cap, warning when it differs from the default.
fn resolve_cap(report: &mut Report, requested: Option<usize>, default: usize) -> usize {
    match requested {
        Some(cap) if cap != default => {
            report
                .warnings
                .push(format!("warning: dimension cap overridden to {cap} (default {default})"));
            cap
        }
        _ => default,
    }
}

fn load(report: Report, text: &str, coeff: Option<CoeffSpec>) -> Result<(Report, SystemFile), Report> {
    match parse_system(text, coeff) {
        Ok(file) => Ok((report, file)),
        Err(e) => Err(parse_failure(report, e)),
    }
}

fn parse_failure(mut report: Report, e: ParseError) -> Report {
    for (i, d) in e.details.iter().enumerate() {
        report.push(format!("violation.{i}"), d);
    }
    report.invalid(e)
}

fn summary(report: &mut Report, file: &SystemFile) {
    let cat = file.category();
    let names = |it: Vec<String>| it.join(",");
    report.push(
        "objects",
        names((0..cat.object_count()).map(|e| cat.object_name(e).to_string()).collect()),
    );
    report.push(
        "morphisms",
        names((0..cat.morphism_count()).map(|n| cat.morphism_name(n).to_string()).collect()),
    );
    report.push("coeff", file.coeff);
    report.push("groupoid", cat.is_groupoid().is_some());
    if let Source::Partial { added, .. } = &file.source {
        report.push("closure_added", added);
    }
    if let Some(sys) = file.system() {
        report.push("base_dim", sys.base_dimension());
        report.push("dim", sys.algebra_dimension());
    }
    if let Some(formal) = &file.formal {
        report.push("symbols", names(formal.symbols().map(|(s, _)| s.to_string()).collect()));
    }
}

fn function_algebra(file: &SystemFile) -> Result<FnAlgebra, String> {
    let CoeffSpec::Functions { kind, constants_only } = file.coeff else {
        return Err("this command needs function coefficients, not formal ones".into());
    };
    let sys = file.system().expect("function files carry a system").clone();
    let spec = if constants_only {
        FunctionRingSpec::constants_only(sys, kind)
    } else {
        FunctionRingSpec::new(sys, kind)
    };
    spec.map(SkewAlgebra::new).map_err(|e| e.to_string())
}

fn full_ring_algebra(file: &SystemFile) -> Result<FnAlgebra, String> {
    match file.coeff {
        CoeffSpec::Functions { constants_only: true, .. } => {
            Err("this command needs the full function ring; drop `constants`".into())
        }
        _ => function_algebra(file),
    }
}

/// Looks `item` up as a named element of the file, else parses it.
fn element(alg: &FnAlgebra, file: &SystemFile, item: &str) -> Result<SkewElem<FnRingElem>, String> {
    match file.element(item.trim()) {
        Some((_, literal, line)) => parse_fn_element(alg, literal).map_err(|e| format!("line {line}: {e}")),
        None => parse_fn_element(alg, item).map_err(|e| format!("element `{}`: {e}", item.trim())),
    }
}

pub fn validate(text: &str) -> Report {
    let (mut r, file) = match load(Report::default(), text, None) {
        Ok(ok) => ok,
        Err(mut r) => {
            r.lines.insert(0, "valid=false".into());
            return r;
        }
    };
    summary(&mut r, &file);
    for (name, literal, line) in &file.elements {
        let shown = match &file.formal {
            Some(sys) => {
                let alg = SkewAlgebra::new(sys.clone());
                parse_formal_element(&alg, literal).map(|x| alg.display(&x))
            }
            None => function_algebra(&file).and_then(|alg| parse_fn_element(&alg, literal).map(|x| alg.display(&x))),
        };
        match shown {
            Ok(s) => r.push(format!("element.{name}"), s),
            Err(e) => return r.invalid(format!("line {line}: {e}")),
        }
    }
    r.lines.insert(0, "valid=true".into());
    r
}

pub fn analyze(text: &str, coeff: Option<CoeffSpec>) -> Report {
    let (mut r, file) = match load(Report::default(), text, coeff) {
        Ok(ok) => ok,
        Err(r) => return r,
    };
    summary(&mut r, &file);
    let alg = match function_algebra(&file) {
        Ok(a) => a,
        Err(e) => return r.invalid(e),
    };
    let spec = alg.system();
    let sys = spec.system();
    let cat = sys.category();
    let mut failures = Vec::new();
    for e in 0..cat.object_count() {
        let obj = cat.object_name(e);
        r.push(format!("space.{obj}"), sys.describe_set(&sys.full_set(e)));
        let monoid = cat.endo_monoid(e).expect("object exists");
        r.push(format!("endo.{obj}.size"), monoid.len());
        r.push(format!("endo.{obj}.divisible"), monoid.is_divisible());
        for x in 0..sys.space(e).len() {
            let orbit = sys.orbit(e, x).expect("point exists");
            r.push(format!("orbit.{obj}.{}", sys.point_label(e, x)), sys.describe_set(&orbit));
        }
        for n in cat.endomorphisms(e).filter(|&n| !cat.is_identity(n)) {
            let m = cat.morphism_name(n);
            let sets = [
                ("per", sys.per_set(e, n)),
                ("sep", sys.sep_set(e, n)),
                ("per_a", sys.per_a_set(spec, e, n)),
                ("sep_a", sys.sep_a_set(spec, e, n)),
            ];
            for (label, set) in sets {
                r.push(format!("{label}.{obj}.{m}"), sys.describe_set(&set.expect("endomorphism")));
            }
        }
        for n in cat.endomorphisms(e) {
            for (label, holds) in sys.set_identities(spec, e, n).expect("endomorphism") {
                if !holds {
                    failures.push(format!("{obj}:{}:{label}", cat.morphism_name(n)));
                }
            }
        }
        r.push(format!("aperiodic.{obj}"), sys.describe_set(&sys.aperiodic_set(e)));
    }
    let freeness = sys.is_topologically_free();
    r.push("top_free", freeness.free);
    for (i, (e, x, n)) in freeness.witnesses.iter().enumerate() {
        r.push(
            format!("periodic.{i}"),
            format!("{}:{}:{}", cat.object_name(*e), sys.point_label(*e, *x), cat.morphism_name(*n)),
        );
    }
    match divisible_obstruction(sys) {
        Some((e, x)) => r.push("divisible_obstruction", format!("{}:{}", cat.object_name(e), sys.point_label(e, x))),
        None => r.push("divisible_obstruction", "none"),
    }
    r.push("set_identities", if failures.is_empty() { "pass" } else { "fail" });
    if let Some(first) = failures.first() {
        r.fail(first);
    }
    r
}

pub fn commutant(text: &str, coeff: Option<CoeffSpec>, cap: Option<usize>) -> Report {
    let (mut r, file) = match load(Report::default(), text, coeff) {
        Ok(ok) => ok,
        Err(r) => return r,
    };
    summary(&mut r, &file);
    let cap = resolve_cap(&mut r, cap, DEFAULT_LINEAR_CAP);
    let alg = match full_ring_algebra(&file) {
        Ok(a) => a,
        Err(e) => return r.invalid(e),
    };
    let max = match is_maximal_commutative(&alg, cap) {
        Ok(m) => m,
        Err(e) => return r.invalid(e),
    };
    r.push("max_comm", max.value());
    r.push("max_comm_method", max.method);
    r.push("max_comm_routes_agree", max.agree());
    let kind = alg.system().scalar();
    if !kind.is_field() {
        r.push("commutant", format!("skipped:scalars {kind} are not a field"));
    } else {
        let model = match LinearModel::new(&alg, cap) {
            Ok(m) => m,
            Err(e) => return r.invalid(e),
        };
        let formula = commutant_per_formula(&alg).expect("field scalars");
        let linear = commutant_linear(&model).expect("field scalars");
        r.push("commutant_dim", formula.dim());
        r.push("a_dim", model.a_subspace().dim());
        r.push("oracles_agree", formula == linear);
        for (i, row) in formula.rows().iter().enumerate() {
            r.push(format!("commutant.{i}"), alg.display(&model.from_vector(row)));
        }
        if let Some(row) = formula.rows().iter().find(|v| !model.a_subspace().contains(v)) {
            r.push("outside_a", alg.display(&model.from_vector(row)));
        }
        if formula != linear {
            let row = formula
                .rows()
                .iter()
                .chain(linear.rows())
                .find(|v| !formula.contains(v) || !linear.contains(v))
                .expect("bases differ");
            r.fail(alg.display(&model.from_vector(row)));
        }
    }
    if !max.agree() {
        r.fail("maximal commutativity routes disagree");
    }
    r
}

pub fn ideal(text: &str, coeff: Option<CoeffSpec>, gens: Option<&str>, cap: Option<usize>) -> Report {
    let (mut r, file) = match load(Report::default(), text, coeff) {
        Ok(ok) => ok,
        Err(r) => return r,
    };
    summary(&mut r, &file);
    let cap = resolve_cap(&mut r, cap, DEFAULT_LINEAR_CAP);
    let alg = match function_algebra(&file) {
        Ok(a) => a,
        Err(e) => return r.invalid(e),
    };
    let Some(gens) = gens else {
        return r.invalid("--gens is required (element names or literals separated by `;`)");
    };
    let mut elements = Vec::new();
    for item in gens.split(';').filter(|s| !s.trim().is_empty()) {
        match element(&alg, &file, item) {
            Ok(x) => elements.push(x),
            Err(e) => return r.invalid(e),
        }
    }
    if elements.is_empty() {
        return r.invalid("--gens names no elements");
    }
    let model = match LinearModel::new(&alg, cap) {
        Ok(m) => m,
        Err(e) => return r.invalid(e),
    };
    for (i, x) in elements.iter().enumerate() {
        r.push(format!("gen.{i}"), alg.display(x));
    }
    let basis = ideal_generated(&model, &elements);
    let meet = intersect_with_a(&model, &basis);
    let closed = is_two_sided_ideal(&model, &basis);
    r.push("ideal_dim", basis.dim());
    r.push("meet_a_dim", meet.dim());
    r.push("meets_a", !meet.is_zero());
    r.push("closed", closed);
    for (i, row) in basis.rows().iter().enumerate() {
        r.push(format!("ideal.{i}"), alg.display(&model.from_vector(row)));
    }
    for (i, row) in meet.rows().iter().enumerate() {
        r.push(format!("meet.{i}"), alg.display(&model.from_vector(row)));
    }
    if !closed {
        r.fail("generated span is not closed under multiplication");
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IipMode {
    /// Exhaustive over finite fields, bounded search otherwise.
    Auto,
    Brute,
    Search,
}

pub fn iip(text: &str, coeff: Option<CoeffSpec>, mode: IipMode, cap: Option<usize>) -> Report {
    let (mut r, file) = match load(Report::default(), text, coeff) {
        Ok(ok) => ok,
        Err(r) => return r,
    };
    summary(&mut r, &file);
    let alg = match full_ring_algebra(&file) {
        Ok(a) => a,
        Err(e) => return r.invalid(e),
    };
    let kind = alg.system().scalar();
    let brute = match mode {
        IipMode::Brute => true,
        IipMode::Search => false,
        IipMode::Auto => kind.is_finite_field(),
    };
    if brute {
        let cap = resolve_cap(&mut r, cap, DEFAULT_IIP_CAP);
        if !kind.is_finite_field() {
            return r.invalid(format!("exhaustive search needs a finite field, got {kind}; use --search"));
        }
        let model = match LinearModel::new(&alg, cap) {
            Ok(m) => m,
            Err(e) => return r.invalid(e),
        };
        let outcome = match brute_force_iip(&model) {
            Ok(o) => o,
            Err(e) => return r.invalid(e),
        };
        r.push("method", "brute");
        r.push("candidates", outcome.candidates);
        r.push("iip", outcome.holds);
        if let Some(w) = &outcome.witness {
            let ideal = ideal_generated(&model, std::slice::from_ref(w));
            r.push("witness_ideal_dim", ideal.dim());
            r.push("witness_meet_a_dim", intersect_with_a(&model, &ideal).dim());
            r.fail(alg.display(w));
        }
    } else {
        let cap = resolve_cap(&mut r, cap, DEFAULT_LINEAR_CAP);
        let model = match LinearModel::new(&alg, cap) {
            Ok(m) => m,
            Err(e) => return r.invalid(e),
        };
        r.push("method", "search");
        match falsify_iip(&model) {
            Some(w) => {
                r.push("iip", false);
                r.fail(alg.display(&w));
            }
            None => r.push("iip_search", "no counterexample found"),
        }
    }
    r
}

fn theorem_options(r: &mut Report, cap: Option<usize>) -> TheoremOptions {
    let iip_cap = resolve_cap(r, cap, DEFAULT_IIP_CAP);
    TheoremOptions {
        iip_cap,
        linear_cap: DEFAULT_LINEAR_CAP.max(iip_cap),
    }
}

pub fn theorems(text: &str, coeff: Option<CoeffSpec>, cap: Option<usize>) -> Report {
    let (mut r, file) = match load(Report::default(), text, coeff) {
        Ok(ok) => ok,
        Err(r) => return r,
    };
    summary(&mut r, &file);
    let options = theorem_options(&mut r, cap);
    let alg = match full_ring_algebra(&file) {
        Ok(a) => a,
        Err(e) => return r.invalid(e),
    };
    let verdict = match check_theorems(&alg, &options) {
        Ok(v) => v,
        Err(e) => return r.invalid(e),
    };
    for line in verdict.report_lines() {
        // the summary already carries some keys
        let key = line.split('=').next().unwrap_or_default();
        if r.get(key).is_none() {
            r.lines.push(line);
        }
    }
    let sys = alg.system().system();
    if let Some((e, x)) = verdict.obstruction {
        let cat = sys.category();
        r.push("obstruction", format!("{}:{}", cat.object_name(e), sys.point_label(e, x)));
    }
    r.push("consistent", verdict.consistent());
    if !verdict.consistent() {
        r.fail(format!("failed:{}", verdict.failed().join(",")));
    }
    r
}

/// Multiplies named elements (or literals) left to right.
pub fn product(text: &str, coeff: Option<CoeffSpec>, items: &[String]) -> Report {
    let (mut r, file) = match load(Report::default(), text, coeff) {
        Ok(ok) => ok,
        Err(r) => return r,
    };
    summary(&mut r, &file);
    if items.is_empty() {
        return r.invalid("name at least one element");
    }
    let lookup = |item: &str| -> (String, usize) {
        match file.element(item) {
            Some((_, literal, line)) => (literal.clone(), *line),
            None => (item.to_string(), 0),
        }
    };
    let located = |e: String, line: usize| if line == 0 { e } else { format!("line {line}: {e}") };
    if let Some(sys) = &file.formal {
        let alg = SkewAlgebra::new(sys.clone());
        let mut acc = alg.identity();
        for item in items {
            let (literal, line) = lookup(item);
            let x = match parse_formal_element(&alg, &literal) {
                Ok(x) => x,
                Err(e) => return r.invalid(located(e, line)),
            };
            r.push(format!("factor.{item}"), alg.display(&x));
            acc = alg.mul(&acc, &x).expect("same algebra");
        }
        r.push("product", alg.display(&acc));
    } else {
        let alg = match function_algebra(&file) {
            Ok(a) => a,
            Err(e) => return r.invalid(e),
        };
        let mut acc = alg.identity();
        for item in items {
            let (literal, line) = lookup(item);
            let x = match parse_fn_element(&alg, &literal) {
                Ok(x) => x,
                Err(e) => return r.invalid(located(e, line)),
            };
            r.push(format!("factor.{item}"), alg.display(&x));
            acc = alg.mul(&acc, &x).expect("same algebra");
        }
        r.push("product", alg.display(&acc));
    }
    r
}

/// Outcome of the theorem checks on one random instance.
#[derive(Debug, Clone)]
pub struct RandomCase {
    pub profile: Profile,
    pub seed: u64,
    pub dim: usize,
    pub top_free: bool,
    pub max_comm: bool,
    pub iip: Option<bool>,
    pub groupoid: bool,
    pub integral_domain: bool,
    pub failed: Vec<&'static str>,
}

pub fn random_case(profile: Profile, seed: u64, kind: ScalarKind, options: &TheoremOptions) -> RandomCase {
    let sys: FinDynSys = random_instance(seed, profile, DEFAULT_MAX_DIM);
    let dim = sys.algebra_dimension();
    let alg = SkewAlgebra::new(FunctionRingSpec::new(sys, kind).expect("random instances validate"));
    let verdict = check_theorems(&alg, options).expect("random instances are within the linear cap");
    RandomCase {
        profile,
        seed,
        dim,
        top_free: verdict.top_free,
        max_comm: verdict.max_comm,
        iip: verdict.iip.value(),
        groupoid: verdict.groupoid,
        integral_domain: verdict.integral_domain,
        failed: verdict.failed(),
    }
}

pub fn random(seed: u64, count: usize, profile: Option<Profile>, coeff: Option<CoeffSpec>, cap: Option<usize>) -> Report {
    let mut r = Report::default();
    let coeff = coeff.unwrap_or(CoeffSpec::Functions {
        kind: ScalarKind::Zmod(2),
        constants_only: false,
    });
    let CoeffSpec::Functions { kind, constants_only: false } = coeff else {
        return r.invalid(format!("random instances need full function rings, got {coeff}"));
    };
    let options = theorem_options(&mut r, cap);
    let profiles: Vec<Profile> = match profile {
        Some(p) => vec![p],
        None => Profile::ALL.to_vec(),
    };
    r.push("coeff", coeff);
    r.push("profiles", profiles.iter().map(|p| p.name()).collect::<Vec<_>>().join(","));
    r.push("seed", seed);
    r.push("count", count);
    let jobs: Vec<(Profile, u64)> = profiles
        .iter()
        .flat_map(|&p| (0..count as u64).map(move |i| (p, seed.wrapping_add(i))))
        .collect();
    let cases: Vec<RandomCase> = jobs
        .par_iter()
        .map(|&(p, s)| random_case(p, s, kind, &options))
        .collect();

    let (mut equiv, mut equiv_total) = (0, 0);
    let (mut implies, mut decided) = (0, 0);
    let (mut groupoid_equiv, mut groupoid_decided) = (0, 0);
    let mut violations = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        let iip = c.iip.map_or("skipped".to_string(), |b| b.to_string());
        r.push(
            format!("instance.{i}"),
            format!(
                "profile:{} seed:{} dim:{} top_free:{} max_comm:{} iip:{} consistent:{}",
                c.profile,
                c.seed,
                c.dim,
                c.top_free,
                c.max_comm,
                iip,
                c.failed.is_empty()
            ),
        );
        if c.integral_domain {
            equiv_total += 1;
            equiv += usize::from(c.top_free == c.max_comm);
        }
        if let Some(ii) = c.iip {
            decided += 1;
            implies += usize::from(!ii || c.max_comm);
            if c.groupoid {
                groupoid_decided += 1;
                groupoid_equiv += usize::from(ii == c.max_comm);
            }
        }
        if !c.failed.is_empty() {
            violations.push(c);
        }
    }
    r.push("instances", cases.len());
    if kind.is_integral_domain() {
        r.push("i_iff_iii", format!("{equiv}/{equiv_total}"));
    } else {
        r.push("i_iff_iii", format!("skipped:scalars {kind} are not an integral domain"));
    }
    r.push("ii_implies_iii", format!("{implies}/{decided}"));
    r.push("ii_iff_iii_groupoid", format!("{groupoid_equiv}/{groupoid_decided}"));
    r.push("violations", violations.len());
    for c in violations {
        r.fail(format!(
            "profile:{} seed:{} coeff:{} failed:{} replay=skewcat random --seed {} --count 1 --profile {} --coeff \"{}\"",
            c.profile,
            c.seed,
            coeff,
            c.failed.join(","),
            c.seed,
            c.profile,
            coeff
        ));
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Example19,
    Example19Discrete,
    Prop9b,
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "example19" => Ok(Target::Example19),
            "example19-discrete" => Ok(Target::Example19Discrete),
            "prop9b" => Ok(Target::Prop9b),
            _ => Err(format!("unknown target `{s}` (expected example19, example19-discrete or prop9b)")),
        }
    }
}

pub fn reproduce(target: Target, seed: u64, samples: usize, degree: u64) -> Report {
    let mut r = Report::default();
    match target {
        Target::Example19 => {
            let report = match example19_symbolic() {
                Ok(rep) => rep,
                Err(e) => return r.invalid(e),
            };
            r.push("factor.B1", &report.factors[0]);
            r.push("factor.B2", &report.factors[1]);
            r.push("product", &report.product);
            for c in &report.coefficients {
                r.push(format!("coeff.{}.computed", c.morphism), &c.computed);
                r.push(format!("coeff.{}.expected", c.morphism), &c.expected);
                r.push(format!("coeff.{}.match", c.morphism), c.matches);
            }
            r.push("unexpected_terms", report.unexpected.join(","));
            r.push("match", report.matches());
            if let Some(c) = report.coefficients.iter().find(|c| !c.matches) {
                r.fail(format!("u[{}] coefficient {} != {}", c.morphism, c.computed, c.expected));
            }
            if let Some(m) = report.unexpected.first() {
                r.fail(format!("unexpected term u[{m}]"));
            }
        }
        Target::Example19Discrete => {
            let d = match example19_discrete_report() {
                Ok(d) => d,
                Err(e) => return r.invalid(e),
            };
            r.push("coeff", "Fp 2");
            r.push("dim", d.algebra_dim);
            r.push("base_dim", d.base_dim);
            r.push("top_free", d.top_free);
            r.push("max_comm", d.max_comm);
            r.push("iip", d.iip);
            r.push("iip_candidates", d.iip_candidates);
            if let Some(w) = &d.iip_witness {
                r.push("iip_witness", w);
            }
            if let Some((dim, meet)) = d.witness_ideal {
                r.push("iip_witness_ideal_dim", dim);
                r.push("iip_witness_meet_a_dim", meet);
            }
            r.push("commutant_dim", d.commutant_dim);
            r.push("commutant_oracles_agree", d.commutant_oracles_agree);
            r.push("ideal_abs_dim", d.ideal_abs_dim);
            r.push("ideal_abs_meet_a_dim", d.ideal_abs_meet_a_dim);
            r.push("ideal_abs_is_span_abs_sqr_sqrt", d.ideal_abs_is_displayed_span);
            for (i, x) in d.ideal_abs_extra.iter().enumerate() {
                r.push(format!("ideal_abs_extra.{i}"), x);
            }
            for (i, x) in d.ideal_abs_meet_a.iter().enumerate() {
                r.push(format!("ideal_abs_meet_a.{i}"), x);
            }
            let checks: [(&str, bool, String); 8] = [
                ("top_free", !d.top_free, "expected false".into()),
                ("max_comm", !d.max_comm, "expected false".into()),
                ("iip", !d.iip, "expected false".into()),
                ("commutant_dim", d.commutant_dim == 7, format!("expected 7, computed {}", d.commutant_dim)),
                ("commutant_oracles", d.commutant_oracles_agree, "oracles disagree".into()),
                ("ideal_abs_dim", d.ideal_abs_dim == 8, format!("expected 8, computed {}", d.ideal_abs_dim)),
                (
                    "ideal_abs_meet_a_dim",
                    d.ideal_abs_meet_a_dim == 0,
                    format!("expected 0, computed {}", d.ideal_abs_meet_a_dim),
                ),
                (
                    "ideal_abs_span",
                    d.ideal_abs_is_displayed_span,
                    "ideal is larger than A_X u_abs + A_X u_sqr + A_Y u_sqrt".into(),
                ),
            ];
            for (name, ok, why) in &checks {
                r.push(format!("check.{name}"), if *ok { "pass".to_string() } else { format!("fail:{why}") });
            }
            if checks.iter().any(|(_, ok, _)| !ok) {
                let witness = d
                    .ideal_abs_meet_a
                    .first()
                    .cloned()
                    .or_else(|| d.ideal_abs_extra.first().cloned())
                    .unwrap_or_else(|| "see check lines".into());
                r.fail(format!("nonzero element of ideal(u[abs]) ∩ A: {witness}"));
            }
        }
        Target::Prop9b => {
            let report = match prop9b_counterexample(degree, samples, seed) {
                Ok(rep) => rep,
                Err(e) => return r.invalid(e),
            };
            r.push("z", 2);
            r.push("degree_bound", report.degree_bound);
            r.push("truncation", 2 * report.degree_bound + 1);
            for (n, p) in &report.sigma_images {
                r.push(format!("sigma.{n}.X"), p);
            }
            r.push("sigma_moves_x", report.sigma_moves_x());
            r.push("samples", report.samples);
            r.push("seed", seed);
            r.push("zero_u0", format!("{}/{}", report.zero_u0, report.samples));
            r.push("ideal_misses_a", report.ideal_misses_a());
            r.push("holds", report.holds());
            if !report.holds() {
                r.fail(format!("seed {seed}: {} samples with a nonzero u_0 coefficient", report.samples - report.zero_u0));
            }
        }
    }
    r
}
