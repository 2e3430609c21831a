//! Commutants, ideals and the ideal intersection property, plus the
//! cross-checks between topological freeness, maximal commutativity and
//! ideal intersection.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::coeff::{FnRingElem, FunctionRingSpec, RingElement, Scalar, ScalarKind};
use crate::dynsys::FinDynSys;
use crate::error::{Error, Result};
use crate::linalg::{unit, ModpEchelon, SubspaceBasis};
use crate::skewalg::{Coordinates, SkewAlgebra, SkewElem};

pub type FnAlgebra = SkewAlgebra<FunctionRingSpec>;

pub const DEFAULT_LINEAR_CAP: usize = 32;
pub const DEFAULT_IIP_CAP: usize = 16;

/// Multiplication table of an algebra in its indicator basis.
#[derive(Debug, Clone)]
pub struct LinearModel {
    alg: FnAlgebra,
    coords: Coordinates,
    kind: ScalarKind,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    a_indices: Vec<usize>,
}

impl LinearModel {
    /// Requires field scalars and dimension at most `cap`.
    pub fn new(alg: &FnAlgebra, cap: usize) -> Result<Self> {
        let kind = alg.system().scalar();
        if !kind.is_field() {
            return Err(Error::NonField(kind.to_string()));
        }
        let coords = alg.coordinates();
        let dim = coords.dim();
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
        let basis: Vec<SkewElem<FnRingElem>> =
            (0..dim).map(|i| alg.basis_element(&coords, i)).collect();
        let table = basis
            .iter()
            .map(|bi| {
                basis
                    .iter()
                    .map(|bj| {
                        let product = alg.mul(bi, bj).expect("same algebra");
                        alg.to_vector(&coords, &product)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, s)| !s.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let cat = alg.category();
        let a_indices = (0..dim)
            .filter(|&i| cat.is_identity(coords.basis_entry(i).0))
            .collect();
        Ok(Self {
            alg: alg.clone(),
            coords,
            kind,
            table,
            a_indices,
        })
    }

    pub fn algebra(&self) -> &FnAlgebra {
        &self.alg
    }

    pub fn coordinates(&self) -> &Coordinates {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    /// Basis indices of `chi_x u_e`, spanning `A`.
    pub fn a_indices(&self) -> &[usize] {
        &self.a_indices
    }

    /// `b_i b_j` as sparse coordinates.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    /// `b_i v`.
    pub fn left_mul(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.kind.zero(); self.dim()];
        for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, s) in &self.table[i][j] {
                out[*k] = &out[*k] + &(c * s);
            }
        }
        out
    }

    /// `v b_i`.
    pub fn right_mul(&self, v: &[Scalar], i: usize) -> Vec<Scalar> {
        let mut out = vec![self.kind.zero(); self.dim()];
        for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, s) in &self.table[j][i] {
                out[*k] = &out[*k] + &(c * s);
            }
        }
        out
    }

    pub fn to_vector(&self, x: &SkewElem<FnRingElem>) -> Vec<Scalar> {
        self.alg.to_vector(&self.coords, x)
    }

    pub fn from_vector(&self, v: &[Scalar]) -> SkewElem<FnRingElem> {
        self.alg.from_vector(&self.coords, v)
    }

    pub fn a_subspace(&self) -> SubspaceBasis {
        SubspaceBasis::coordinate(self.kind, self.dim(), &self.a_indices).expect("field")
    }

    pub fn whole(&self) -> SubspaceBasis {
        SubspaceBasis::full(self.kind, self.dim()).expect("field")
    }
}

/// Basis entries `(morphism, point)` of the commutant read off the periodic
/// sets: every `chi_x u_e`, and `chi_x u_n` for nonidentity endomorphisms `n`
/// fixing `x`.
pub fn commutant_entries(sys: &FinDynSys) -> Vec<(usize, usize)> {
    let cat = sys.category();
    let mut out = Vec::new();
    for n in 0..cat.morphism_count() {
        let e = cat.cod(n);
        if cat.is_identity(n) {
            out.extend((0..sys.space(e).len()).map(|x| (n, x)));
        } else if cat.dom(n) == e {
            let per = sys.per_set(e, n).expect("endomorphism");
            out.extend(per.points.iter().map(|&x| (n, x)));
        }
    }
    out
}

pub fn commutant_per_formula(alg: &FnAlgebra) -> Result<SubspaceBasis> {
    let kind = alg.system().scalar();
    let coords = alg.coordinates();
    let indices: Vec<usize> = commutant_entries(alg.system().system())
        .into_iter()
        .map(|(n, x)| coords.index(n, x))
        .collect();
    SubspaceBasis::coordinate(kind, coords.dim(), &indices)
}

/// Solves `[chi_x u_e, v] = 0` for every basis element of `A`.
pub fn commutant_linear(model: &LinearModel) -> Result<SubspaceBasis> {
    let dim = model.dim();
    let mut equations = Vec::new();
    for &a in model.a_indices() {
        let mut rows = vec![vec![model.kind().zero(); dim]; dim];
        for j in 0..dim {
            for (k, s) in model.product(a, j) {
                rows[*k][j] = &rows[*k][j] + s;
            }
            for (k, s) in model.product(j, a) {
                rows[*k][j] = &rows[*k][j] - s;
            }
        }
        equations.extend(rows.into_iter().filter(|r| r.iter().any(|s| !s.is_zero())));
    }
    SubspaceBasis::nullspace(model.kind(), dim, &equations)
}

/// Both sides of the maximal commutativity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCommReport {
    /// Commutant equals `A`: by linear solve over fields, or by the
    /// annihilator criterion over finite rings.
    pub by_commutant: bool,
    /// No nonidentity endomorphism has a fixed point.
    pub by_periodic: bool,
    pub method: &'static str,
}

impl MaxCommReport {
    pub fn value(&self) -> bool {
        self.by_commutant
    }

    pub fn agree(&self) -> bool {
        self.by_commutant == self.by_periodic
    }
}

pub fn is_maximal_commutative(alg: &FnAlgebra, cap: usize) -> Result<MaxCommReport> {
    let spec = alg.system();
    let sys = spec.system();
    let by_periodic = nonidentity_endos(sys).all(|(e, n)| sys.per_set(e, n).unwrap().is_empty());
    let kind = spec.scalar();
    let (by_commutant, method) = if kind.is_field() {
        let base = sys.base_dimension();
        match LinearModel::new(alg, cap) {
            Ok(model) => (commutant_linear(&model)?.dim() == base, "linear"),
            Err(Error::DimensionCap { .. }) => (commutant_per_formula(alg)?.dim() == base, "per-formula"),
            Err(e) => return Err(e),
        }
    } else {
        (annihilator_criterion(spec)?, "annihilator")
    };
    Ok(MaxCommReport {
        by_commutant,
        by_periodic,
        method,
    })
}

fn nonidentity_endos(sys: &FinDynSys) -> impl Iterator<Item = (usize, usize)> + '_ {
    let cat = sys.category();
    (0..cat.morphism_count())
        .filter(move |&n| !cat.is_identity(n) && cat.dom(n) == cat.cod(n))
        .map(move |n| (cat.cod(n), n))
}

const ANNIHILATOR_ENUMERATION_LIMIT: u128 = 1 << 16;

/// Maximal commutativity over a finite scalar ring: for every nonidentity
/// `n` in `G_e` and nonzero `c` in `A_e` some `a` in `A_e` has
/// `c (sigma(n)(a) - a) != 0`. `c` ranges over all of `A_e`; `a` ranges over
/// the indicators, which generate `A_e` additively.
pub fn annihilator_criterion(spec: &FunctionRingSpec) -> Result<bool> {
    let kind = spec.scalar();
    let elements = kind
        .elements()
        .ok_or_else(|| Error::NonFiniteField(kind.to_string()))?;
    let sys = spec.system();
    for (e, n) in nonidentity_endos(sys) {
        let size = sys.space(e).len();
        let count = (elements.len() as u128).checked_pow(size as u32);
        if count.map_or(true, |c| c > ANNIHILATOR_ENUMERATION_LIMIT) {
            return Err(Error::DimensionCap {
                dim: size,
                cap: ANNIHILATOR_ENUMERATION_LIMIT.ilog(elements.len() as u128) as usize,
            });
        }
        let differences: Vec<FnRingElem> = (0..size)
            .map(|x| {
                let a = spec.indicator(e, x);
                spec.sigma(n, &a).unwrap().try_sub(&a).unwrap()
            })
            .collect();
        let mut values = vec![0usize; size];
        loop {
            let c = spec.from_values(e, values.iter().map(|&i| elements[i].clone()).collect())?;
            if !RingElement::is_zero(&c)
                && differences.iter().all(|d| c.try_mul(d).unwrap().is_zero())
            {
                return Ok(false);
            }
            if !advance(&mut values, elements.len()) {
                break;
            }
        }
    }
    Ok(true)
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// The two-sided ideal generated by `gens`: the span of `gens` closed under
/// left and right multiplication by basis elements.
pub fn ideal_generated(model: &LinearModel, gens: &[SkewElem<FnRingElem>]) -> SubspaceBasis {
    let vectors: Vec<Vec<Scalar>> = gens.iter().map(|g| model.to_vector(g)).collect();
    ideal_of_vectors(model, vectors)
}

pub fn ideal_of_vectors(model: &LinearModel, vectors: Vec<Vec<Scalar>>) -> SubspaceBasis {
    let mut basis = SubspaceBasis::zero(model.kind(), model.dim()).expect("field");
    let mut queue = Vec::new();
    for v in vectors {
        if basis.insert(v.clone()) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for i in 0..model.dim() {
            for w in [model.left_mul(i, &v), model.right_mul(&v, i)] {
                if basis.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
    }
    basis
}

/// Whether `basis` is closed under multiplication by basis elements on both
/// sides.
pub fn is_two_sided_ideal(model: &LinearModel, basis: &SubspaceBasis) -> bool {
    basis.rows().iter().all(|v| {
        (0..model.dim())
            .all(|i| basis.contains(&model.left_mul(i, v)) && basis.contains(&model.right_mul(v, i)))
    })
}

/// Whether the span of `basis` is closed under multiplication.
pub fn is_subring(model: &LinearModel, basis: &SubspaceBasis) -> bool {
    let elems: Vec<SkewElem<FnRingElem>> = basis.rows().iter().map(|r| model.from_vector(r)).collect();
    let alg = model.algebra();
    elems.iter().all(|x| {
        elems
            .iter()
            .all(|y| basis.contains(&model.to_vector(&alg.mul(x, y).unwrap())))
    })
}

pub fn intersect_with_a(model: &LinearModel, ideal: &SubspaceBasis) -> SubspaceBasis {
    ideal.intersect(&model.a_subspace())
}

/// Basis products over `F_p` with the `A` coordinates moved last, so that a
/// pivot in the tail means the span meets `A`.
struct ModpModel {
    p: u32,
    dim: usize,
    a_start: usize,
    /// Canonical index to permuted index.
    position: Vec<usize>,
    table: Vec<Vec<Vec<(usize, u32)>>>,
}

impl ModpModel {
    fn new(model: &LinearModel, p: u32) -> Self {
        let dim = model.dim();
        let a: BTreeSet<usize> = model.a_indices().iter().copied().collect();
        let order: Vec<usize> = (0..dim)
            .filter(|i| !a.contains(i))
            .chain(a.iter().copied())
            .collect();
        let mut position = vec![0; dim];
        for (pos, &i) in order.iter().enumerate() {
            position[i] = pos;
        }
        let residue = |s: &Scalar| match s {
            Scalar::Zmod { value, .. } => *value as u32,
            Scalar::Rational(_) => unreachable!("prime field"),
        };
        let table = order
            .iter()
            .map(|&i| {
                order
                    .iter()
                    .map(|&j| {
                        model
                            .product(i, j)
                            .iter()
                            .map(|(k, s)| (position[*k], residue(s)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            p,
            dim,
            a_start: dim - a.len(),
            position,
            table,
        }
    }

    fn multiply(&self, v: &[u32], i: usize, left: bool) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u32; self.dim];
        for (j, &c) in v.iter().enumerate().filter(|(_, c)| **c != 0) {
            let entries = if left { &self.table[i][j] } else { &self.table[j][i] };
            for &(k, s) in entries {
                out[k] = ((out[k] as u64 + c as u64 * s as u64) % p) as u32;
            }
        }
        out
    }

    /// Whether the ideal generated by `x` (permuted coordinates) meets `A`.
    fn ideal_meets_a(&self, x: Vec<u32>) -> bool {
        let mut echelon = ModpEchelon::new(self.p, self.dim);
        let mut queue = Vec::new();
        match echelon.insert(x.clone()) {
            Some(c) if c >= self.a_start => return true,
            Some(_) => queue.push(x),
            None => return false,
        }
        while let Some(v) = queue.pop() {
            for i in 0..self.dim {
                for left in [true, false] {
                    let w = self.multiply(&v, i, left);
                    if let Some(c) = echelon.insert(w.clone()) {
                        if c >= self.a_start {
                            return true;
                        }
                        queue.push(w);
                    }
                }
            }
        }
        false
    }
}

/// Result of the exhaustive ideal intersection check.
#[derive(Debug, Clone)]
pub struct IipOutcome {
    pub holds: bool,
    /// The first candidate, in enumeration order, whose ideal misses `A`.
    pub witness: Option<SkewElem<FnRingElem>>,
    pub candidates: u64,
}

/// Decides whether every nonzero ideal meets `A`. Every nonzero ideal
/// contains the ideal of one of its nonzero elements, so it suffices to check
/// singly generated ideals, one generator per line through the origin.
pub fn brute_force_iip(model: &LinearModel) -> Result<IipOutcome> {
    let p = match model.kind() {
        ScalarKind::Zmod(p) if model.kind().is_finite_field() => p,
        kind => return Err(Error::NonFiniteField(kind.to_string())),
    };
    let dim = model.dim();
    let total = (p as u128).checked_pow(dim as u32).filter(|&t| t <= u64::MAX as u128);
    let total = total.ok_or(Error::DimensionCap { dim, cap: 64 })? as u64;
    let modp = ModpModel::new(model, p as u32);
    let digits = |mut t: u64| -> Vec<u32> {
        (0..dim)
            .map(|_| {
                let d = (t % p) as u32;
                t /= p;
                d
            })
            .collect()
    };
    // one representative per line: the last nonzero digit is 1
    let normalized = |t: &u64| {
        let mut t = *t;
        while t >= p {
            t /= p;
        }
        t == 1
    };
    let permute = |v: &[u32]| {
        let mut out = vec![0u32; dim];
        for (i, &c) in v.iter().enumerate() {
            out[modp.position[i]] = c;
        }
        out
    };
    let candidates = (1..total).into_par_iter().filter(normalized).count() as u64;
    let failing = (1..total)
        .into_par_iter()
        .filter(normalized)
        .find_first(|&t| !modp.ideal_meets_a(permute(&digits(t))));
    let kind = model.kind();
    let witness = failing.map(|t| {
        let v: Vec<Scalar> = digits(t).into_iter().map(|d| kind.from_i64(d as i64)).collect();
        model.from_vector(&v)
    });
    Ok(IipOutcome {
        holds: witness.is_none(),
        witness,
        candidates,
    })
}

/// Bounded search for a generator whose ideal misses `A`: coefficients in
/// `{-1, 0, 1}`, at most two nonzero, first nonzero one equal to 1.
pub fn falsify_iip(model: &LinearModel) -> Option<SkewElem<FnRingElem>> {
    let dim = model.dim();
    let kind = model.kind();
    let mut candidates = Vec::new();
    for i in 0..dim {
        candidates.push(vec![(i, 1)]);
        for j in i + 1..dim {
            candidates.push(vec![(i, 1), (j, 1)]);
            candidates.push(vec![(i, 1), (j, -1)]);
        }
    }
    let a = model.a_subspace();
    candidates.into_par_iter().find_first(|terms| {
        let mut v = vec![kind.zero(); dim];
        for &(i, c) in terms {
            v[i] = kind.from_i64(c);
        }
        let ideal = ideal_of_vectors(model, vec![v]);
        ideal.intersect(&a).is_zero()
    })
    .map(|terms| {
        let mut v = vec![kind.zero(); dim];
        for (i, c) in terms {
            v[i] = kind.from_i64(c);
        }
        model.from_vector(&v)
    })
}

/// A point whose orbit is smaller than its divisible endomorphism monoid:
/// then some nonidentity endomorphism has a fixed point.
pub fn divisible_obstruction(sys: &FinDynSys) -> Option<(usize, usize)> {
    let cat = sys.category();
    for e in 0..cat.object_count() {
        let monoid = cat.endo_monoid(e).expect("object exists");
        if !monoid.is_divisible() {
            continue;
        }
        for x in 0..sys.space(e).len() {
            if sys.orbit(e, x).expect("point exists").len() < monoid.len() {
                return Some((e, x));
            }
        }
    }
    None
}

/// The set of `u` with `u y = y` for all `y` with `cod(y) = cod(x)`, as a
/// particular solution plus the homogeneous solution space.
pub fn left_unit_solutions(
    model: &LinearModel,
    x: &SkewElem<FnRingElem>,
) -> Result<(SkewElem<FnRingElem>, SubspaceBasis)> {
    let alg = model.algebra();
    let objects = alg.cod(x);
    unit_solutions(model, x, &objects, true)
}

/// The set of `u` with `z u = z` for all `z` with `dom(z) = dom(x)`.
pub fn right_unit_solutions(
    model: &LinearModel,
    x: &SkewElem<FnRingElem>,
) -> Result<(SkewElem<FnRingElem>, SubspaceBasis)> {
    let alg = model.algebra();
    let objects = alg.dom(x);
    unit_solutions(model, x, &objects, false)
}

fn unit_solutions(
    model: &LinearModel,
    x: &SkewElem<FnRingElem>,
    objects: &BTreeSet<usize>,
    left: bool,
) -> Result<(SkewElem<FnRingElem>, SubspaceBasis)> {
    let alg = model.algebra();
    let cat = alg.category();
    let dim = model.dim();
    let kind = model.kind();
    // elements with cod (resp. dom) in `objects` are spanned by these
    let span: Vec<usize> = (0..dim)
        .filter(|&i| {
            let n = model.coordinates().basis_entry(i).0;
            objects.contains(&if left { cat.cod(n) } else { cat.dom(n) })
        })
        .collect();
    // rows: for each spanning b and output coordinate k, sum_j u_j (b_j b)_k
    let mut rows: Vec<(Vec<Scalar>, Scalar)> = Vec::new();
    for &b in &span {
        let mut block = vec![vec![kind.zero(); dim]; dim];
        for j in 0..dim {
            let product = if left { model.product(j, b) } else { model.product(b, j) };
            for (k, s) in product {
                block[*k][j] = &block[*k][j] + s;
            }
        }
        let target = unit(kind, dim, b);
        rows.extend(block.into_iter().zip(target));
    }
    let particular = if left { alg.left_unit(x)? } else { alg.right_unit(x)? };
    let pv = model.to_vector(&particular);
    for (row, rhs) in &rows {
        let lhs = row
            .iter()
            .zip(&pv)
            .fold(kind.zero(), |acc, (a, b)| &acc + &(a * b));
        if lhs != *rhs {
            return Err(Error::OracleMismatch("local unit fails its equations".into()));
        }
    }
    let equations: Vec<Vec<Scalar>> = rows.into_iter().map(|(r, _)| r).collect();
    let homogeneous = SubspaceBasis::nullspace(kind, dim, &equations)?;
    Ok((particular, homogeneous))
}

/// The span of `chi_p u_m` over morphisms `m` whose domain (resp. codomain)
/// avoids `objects`: those terms annihilate everything with codomain (resp.
/// domain) in `objects`.
pub fn unit_ambiguity(model: &LinearModel, objects: &BTreeSet<usize>, left: bool) -> SubspaceBasis {
    let cat = model.algebra().category();
    let coords: Vec<usize> = (0..model.dim())
        .filter(|&i| {
            let n = model.coordinates().basis_entry(i).0;
            !objects.contains(&if left { cat.dom(n) } else { cat.cod(n) })
        })
        .collect();
    SubspaceBasis::coordinate(model.kind(), model.dim(), &coords).expect("field")
}

/// Whether a check ran, and if not, why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Decided(bool),
    Skipped(String),
}

impl Decision {
    pub fn value(&self) -> Option<bool> {
        match self {
            Decision::Decided(b) => Some(*b),
            Decision::Skipped(_) => None,
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::Decided(b) => write!(f, "{b}"),
            Decision::Skipped(reason) => write!(f, "skipped:{reason}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremOptions {
    pub iip_cap: usize,
    pub linear_cap: usize,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        Self {
            iip_cap: DEFAULT_IIP_CAP,
            linear_cap: DEFAULT_LINEAR_CAP,
        }
    }
}

/// Topological freeness (i), the ideal intersection property (ii) and
/// maximal commutativity (iii), with every applicable implication checked.
#[derive(Debug, Clone)]
pub struct TheoremVerdict {
    pub top_free: bool,
    pub max_comm: bool,
    pub max_comm_method: &'static str,
    pub iip: Decision,
    pub iip_witness: Option<String>,
    pub groupoid: bool,
    pub integral_domain: bool,
    pub obstruction: Option<(usize, usize)>,
    pub implications: Vec<(&'static str, bool)>,
    /// Observations that are logged but not asserted.
    pub notes: Vec<(&'static str, String)>,
}

impl TheoremVerdict {
    pub fn consistent(&self) -> bool {
        self.implications.iter().all(|(_, holds)| *holds)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.implications
            .iter()
            .filter(|(_, holds)| !holds)
            .map(|(name, _)| *name)
            .collect()
    }

    pub fn report_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("top_free={}", self.top_free),
            format!("max_comm={}", self.max_comm),
            format!("max_comm_method={}", self.max_comm_method),
            format!("iip={}", self.iip),
            format!("groupoid={}", self.groupoid),
            format!("integral_domain={}", self.integral_domain),
        ];
        if let Some(w) = &self.iip_witness {
            lines.push(format!("iip_witness={w}"));
        }
        for (name, holds) in &self.implications {
            lines.push(format!("implication.{name}={holds}"));
        }
        for (name, value) in &self.notes {
            lines.push(format!("note.{name}={value}"));
        }
        lines
    }
}

pub fn check_theorems(alg: &FnAlgebra, options: &TheoremOptions) -> Result<TheoremVerdict> {
    let spec = alg.system();
    let sys = spec.system();
    let kind = spec.scalar();
    let top_free = sys.is_topologically_free().free;
    let max_comm = is_maximal_commutative(alg, options.linear_cap)?;
    let groupoid = alg.inverse_table().is_some();
    let integral_domain = kind.is_integral_domain();
    let (iip, iip_witness) = if !kind.is_finite_field() {
        (Decision::Skipped(format!("scalars {kind} are not a finite field")), None)
    } else {
        match LinearModel::new(alg, options.iip_cap) {
            Ok(model) => {
                let outcome = brute_force_iip(&model)?;
                (
                    Decision::Decided(outcome.holds),
                    outcome.witness.map(|w| alg.display(&w)),
                )
            }
            Err(Error::DimensionCap { dim, cap }) => {
                (Decision::Skipped(format!("dimension {dim} exceeds cap {cap}")), None)
            }
            Err(e) => return Err(e),
        }
    };
    let obstruction = divisible_obstruction(sys);

    let mut implications = Vec::new();
    let mut notes = Vec::new();
    let iii = max_comm.value();
    if integral_domain {
        implications.push(("iii_routes_agree", max_comm.agree()));
        implications.push(("i_iff_iii", top_free == iii));
    } else {
        notes.push(("iii_routes", if max_comm.agree() { "agree" } else { "diverge" }.to_string()));
        notes.push(("i_vs_iii", if top_free == iii { "agree" } else { "diverge" }.to_string()));
    }
    if let Some(ii) = iip.value() {
        implications.push(("ii_implies_iii", !ii || iii));
        if groupoid {
            implications.push(("ii_iff_iii_groupoid", ii == iii));
            implications.push(("i_ii_iii_equivalent", top_free == ii && ii == iii));
        }
    }
    if obstruction.is_some() {
        implications.push(("divisible_obstruction_refutes_iii", !iii));
    }
    Ok(TheoremVerdict {
        top_free,
        max_comm: iii,
        max_comm_method: max_comm.method,
        iip,
        iip_witness,
        groupoid,
        integral_domain,
        obstruction,
        implications,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{
        const0_monoid, example19_discrete, single_arrow_system, swap_system,
        trivial_z2_on_point, z4_through_z2,
    };

    fn algebra(sys: FinDynSys, kind: ScalarKind) -> FnAlgebra {
        SkewAlgebra::new(FunctionRingSpec::new(sys, kind).unwrap())
    }

    fn model(sys: FinDynSys, kind: ScalarKind) -> LinearModel {
        LinearModel::new(&algebra(sys, kind), DEFAULT_LINEAR_CAP).unwrap()
    }

    #[test]
    fn example19_commutant() {
        let m = model(example19_discrete(), ScalarKind::Zmod(2));
        let formula = commutant_per_formula(m.algebra()).unwrap();
        assert_eq!(formula.dim(), 7);
        assert_eq!(commutant_linear(&m).unwrap(), formula);
        assert!(m.a_subspace().is_subspace_of(&formula));
        assert!(is_subring(&m, &formula));
    }

    #[test]
    fn commutant_of_trivial_z2_is_the_group_algebra() {
        let m = model(trivial_z2_on_point(), ScalarKind::Rational);
        let c = commutant_linear(&m).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c, m.whole());
    }

    #[test]
    fn maximal_commutativity() {
        let report =
            is_maximal_commutative(&algebra(example19_discrete(), ScalarKind::Zmod(2)), 32).unwrap();
        assert!(!report.value() && report.agree());
        let report = is_maximal_commutative(&algebra(swap_system(), ScalarKind::Rational), 32).unwrap();
        assert!(report.value() && report.agree());
        let report =
            is_maximal_commutative(&algebra(trivial_z2_on_point(), ScalarKind::Rational), 32).unwrap();
        assert!(!report.value());
    }

    #[test]
    fn zmod4_uses_the_annihilator_route() {
        let report = is_maximal_commutative(&algebra(swap_system(), ScalarKind::Zmod(4)), 32).unwrap();
        assert_eq!(report.method, "annihilator");
        assert!(report.value() && report.agree());
        let report = is_maximal_commutative(&algebra(z4_through_z2(), ScalarKind::Zmod(4)), 32).unwrap();
        assert!(!report.value() && report.agree());
    }

    #[test]
    fn ideals_in_example19() {
        let m = model(example19_discrete(), ScalarKind::Zmod(2));
        let alg = m.algebra();
        let abs = alg.category().morphism_index("abs").unwrap();
        let ideal = ideal_generated(&m, &[alg.unit_term(abs)]);
        assert!(is_two_sided_ideal(&m, &ideal));
        assert_eq!(ideal.dim(), 10);
        let meet = intersect_with_a(&m, &ideal);
        assert_eq!(meet.dim(), 2);
        let id_y = alg.category().identity(alg.category().object_index("Y").unwrap());
        assert!(meet.contains(&m.to_vector(&alg.unit_term(id_y))));

        let whole = ideal_generated(&m, &[alg.identity()]);
        assert_eq!(whole, m.whole());
        assert_eq!(intersect_with_a(&m, &whole), m.a_subspace());
    }

    #[test]
    fn group_algebra_ideal_misses_a() {
        let m = model(trivial_z2_on_point(), ScalarKind::Zmod(2));
        let alg = m.algebra();
        let g = alg.category().morphism_index("g").unwrap();
        let x = alg.add(&alg.identity(), &alg.unit_term(g)).unwrap();
        let ideal = ideal_generated(&m, &[x]);
        assert_eq!(ideal.dim(), 1);
        assert!(intersect_with_a(&m, &ideal).is_zero());
    }

    #[test]
    fn brute_force_decisions() {
        let m = model(example19_discrete(), ScalarKind::Zmod(2));
        let outcome = brute_force_iip(&m).unwrap();
        assert!(!outcome.holds);
        assert_eq!(outcome.candidates, 8191);
        let w = outcome.witness.unwrap();
        assert!(intersect_with_a(&m, &ideal_generated(&m, &[w])).is_zero());

        let m = model(swap_system(), ScalarKind::Zmod(2));
        let outcome = brute_force_iip(&m).unwrap();
        assert!(outcome.holds);
        assert_eq!(outcome.candidates, 15);

        let point = FinDynSys::from_labels(
            crate::category::CategoryBuilder::new().object("pt").build().unwrap(),
            &[("pt", vec!["p".to_string()])],
            &[],
        )
        .unwrap();
        assert!(brute_force_iip(&model(point, ScalarKind::Zmod(2))).unwrap().holds);

        let m = model(swap_system(), ScalarKind::Zmod(3));
        assert_eq!(brute_force_iip(&m).unwrap().candidates, 40);
        let q = model(swap_system(), ScalarKind::Rational);
        assert!(matches!(brute_force_iip(&q), Err(Error::NonFiniteField(_))));
    }

    #[test]
    fn rational_search_finds_group_algebra_ideal() {
        let m = model(trivial_z2_on_point(), ScalarKind::Rational);
        let found = falsify_iip(&m).unwrap();
        assert_eq!(m.to_vector(&found).iter().filter(|s| !s.is_zero()).count(), 2);
        assert!(falsify_iip(&model(swap_system(), ScalarKind::Rational)).is_none());
    }

    #[test]
    fn caps_are_enforced() {
        let alg = algebra(example19_discrete(), ScalarKind::Zmod(2));
        assert!(matches!(
            LinearModel::new(&alg, 12),
            Err(Error::DimensionCap { dim: 13, cap: 12 })
        ));
    }

    #[test]
    fn theorem_verdicts() {
        let options = TheoremOptions::default();
        let v = check_theorems(&algebra(example19_discrete(), ScalarKind::Zmod(2)), &options).unwrap();
        assert_eq!((v.top_free, v.max_comm, v.iip.value()), (false, false, Some(false)));
        assert!(v.consistent());

        let v = check_theorems(&algebra(swap_system(), ScalarKind::Zmod(2)), &options).unwrap();
        assert_eq!((v.top_free, v.max_comm, v.iip.value()), (true, true, Some(true)));
        assert!(v.consistent());

        let v = check_theorems(&algebra(const0_monoid(), ScalarKind::Zmod(2)), &options).unwrap();
        assert!(!v.top_free && !v.max_comm);
        assert!(v.obstruction.is_some());
        assert!(v.consistent());

        let v = check_theorems(&algebra(single_arrow_system(), ScalarKind::Zmod(2)), &options).unwrap();
        assert_eq!((v.top_free, v.max_comm, v.iip.value()), (true, true, Some(false)));
        assert!(v.consistent());

        let v = check_theorems(&algebra(swap_system(), ScalarKind::Rational), &options).unwrap();
        assert!(matches!(v.iip, Decision::Skipped(_)));
        assert!(v.report_lines().contains(&"iip=skipped:scalars Q are not a finite field".to_string()));
    }

    #[test]
    fn obstructions() {
        let sys = const0_monoid();
        let (e, x) = divisible_obstruction(&sys).unwrap();
        assert_eq!(sys.point_label(e, x), "0");
        assert!(divisible_obstruction(&swap_system()).is_none());
        assert!(divisible_obstruction(&z4_through_z2()).is_some());
    }

    #[test]
    fn local_units_are_unique_only_up_to_annihilating_terms() {
        let m = model(example19_discrete(), ScalarKind::Zmod(2));
        let alg = m.algebra();
        let cat = alg.category();
        let sqr = cat.morphism_index("sqr").unwrap();
        let x = alg.unit_term(sqr);
        let (l, free) = left_unit_solutions(&m, &x).unwrap();
        assert_eq!(l, alg.left_unit(&x).unwrap());
        assert_eq!(free, unit_ambiguity(&m, &alg.cod(&x), true));
        assert!(!free.is_zero());
        let (r, free) = right_unit_solutions(&m, &x).unwrap();
        assert_eq!(r, alg.right_unit(&x).unwrap());
        assert_eq!(free, unit_ambiguity(&m, &alg.dom(&x), false));

        let m = model(swap_system(), ScalarKind::Zmod(2));
        let x = m.algebra().identity();
        let (_, free) = left_unit_solutions(&m, &x).unwrap();
        assert!(free.is_zero());
    }
}
