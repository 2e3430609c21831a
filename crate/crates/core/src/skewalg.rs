//! The skew category algebra `A x_sigma G`: finitely supported sums
//! `sum a_n u_n` with `a_n` in `A_cod(n)`, multiplied by
//! `(a u_m)(b u_m') = a sigma(m)(b) u_(m . m')` on composable pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;

use crate::category::FinCategory;
use crate::coeff::{
    sigma_formal, FnRingElem, FormalElem, FormalSystem, FunctionRingSpec, RingElement, Scalar,
};
use crate::error::{Error, Result};

/// A skew category system `(A, G, sigma)`: a category, a commutative unital
/// ring over each object and the ring maps `sigma(n): A_dom(n) -> A_cod(n)`.
///
/// Implementations may assume their inputs live over the right objects;
/// [`SkewAlgebra`] checks that before calling in.
pub trait SkewSystem: Send + Sync {
    type Coeff: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn category(&self) -> &FinCategory;
    fn coeff_object(&self, a: &Self::Coeff) -> usize;
    fn zero(&self, e: usize) -> Self::Coeff;
    fn one(&self, e: usize) -> Self::Coeff;
    fn is_zero(&self, a: &Self::Coeff) -> bool;
    fn add(&self, a: &Self::Coeff, b: &Self::Coeff) -> Self::Coeff;
    fn neg(&self, a: &Self::Coeff) -> Self::Coeff;
    fn mul(&self, a: &Self::Coeff, b: &Self::Coeff) -> Self::Coeff;
    fn sigma(&self, n: usize, a: &Self::Coeff) -> Self::Coeff;
    fn format_coeff(&self, a: &Self::Coeff) -> String;
}

impl SkewSystem for FunctionRingSpec {
    type Coeff = FnRingElem;

    fn category(&self) -> &FinCategory {
        self.system().category()
    }

    fn coeff_object(&self, a: &FnRingElem) -> usize {
        a.object
    }

    fn zero(&self, e: usize) -> FnRingElem {
        FunctionRingSpec::zero(self, e)
    }

    fn one(&self, e: usize) -> FnRingElem {
        FunctionRingSpec::one(self, e)
    }

    fn is_zero(&self, a: &FnRingElem) -> bool {
        RingElement::is_zero(a)
    }

    fn add(&self, a: &FnRingElem, b: &FnRingElem) -> FnRingElem {
        a.try_add(b).expect("coefficients over one object")
    }

    fn neg(&self, a: &FnRingElem) -> FnRingElem {
        FnRingElem::neg(a)
    }

    fn mul(&self, a: &FnRingElem, b: &FnRingElem) -> FnRingElem {
        a.try_mul(b).expect("coefficients over one object")
    }

    fn sigma(&self, n: usize, a: &FnRingElem) -> FnRingElem {
        FunctionRingSpec::sigma(self, n, a).expect("coefficient over dom(n)")
    }

    fn format_coeff(&self, a: &FnRingElem) -> String {
        let sys = self.system();
        let entries: Vec<String> = a
            .values
            .iter()
            .enumerate()
            .map(|(x, v)| format!("{}:{}", sys.point_label(a.object, x), v))
            .collect();
        format!(
            "{{{}}}@{}",
            entries.join(", "),
            sys.category().object_name(a.object)
        )
    }
}

impl SkewSystem for FormalSystem {
    type Coeff = FormalElem;

    fn category(&self) -> &FinCategory {
        FormalSystem::category(self)
    }

    fn coeff_object(&self, a: &FormalElem) -> usize {
        a.object
    }

    fn zero(&self, e: usize) -> FormalElem {
        FormalElem::zero(e)
    }

    fn one(&self, e: usize) -> FormalElem {
        FormalElem::one(e)
    }

    fn is_zero(&self, a: &FormalElem) -> bool {
        RingElement::is_zero(a)
    }

    fn add(&self, a: &FormalElem, b: &FormalElem) -> FormalElem {
        a.try_add(b).expect("coefficients over one object")
    }

    fn neg(&self, a: &FormalElem) -> FormalElem {
        FormalElem::neg(a)
    }

    fn mul(&self, a: &FormalElem, b: &FormalElem) -> FormalElem {
        a.try_mul(b).expect("coefficients over one object")
    }

    fn sigma(&self, n: usize, a: &FormalElem) -> FormalElem {
        sigma_formal(self.category(), n, a).expect("coefficient over dom(n)")
    }

    fn format_coeff(&self, a: &FormalElem) -> String {
        format!("({})", self.display(a))
    }
}

static NEXT_CONTEXT: AtomicU64 = AtomicU64::new(1);

/// An element of a [`SkewAlgebra`]. Terms are keyed by morphism index and
/// never hold a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewElem<C> {
    ctx: u64,
    terms: BTreeMap<usize, C>,
}

impl<C> SkewElem<C> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, n: usize) -> Option<&C> {
        self.terms.get(&n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.len() <= 1
    }
}

pub struct SkewAlgebra<S: SkewSystem> {
    sys: Arc<S>,
    ctx: u64,
    inverse: Option<Vec<usize>>,
}

impl<S: SkewSystem> Clone for SkewAlgebra<S> {
    fn clone(&self) -> Self {
        Self {
            sys: Arc::clone(&self.sys),
            ctx: self.ctx,
            inverse: self.inverse.clone(),
        }
    }
}

impl<S: SkewSystem> fmt::Debug for SkewAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SkewAlgebra")
            .field("context", &self.ctx)
            .field("morphisms", &self.category().morphism_count())
            .finish()
    }
}

impl<S: SkewSystem> SkewAlgebra<S> {
    pub fn new(sys: S) -> Self {
        let inverse = sys.category().is_groupoid();
        Self {
            sys: Arc::new(sys),
            ctx: NEXT_CONTEXT.fetch_add(1, Ordering::Relaxed),
            inverse,
        }
    }

    pub fn system(&self) -> &S {
        &self.sys
    }

    pub fn category(&self) -> &FinCategory {
        self.sys.category()
    }

    pub fn inverse_table(&self) -> Option<&[usize]> {
        self.inverse.as_deref()
    }

    pub fn zero(&self) -> SkewElem<S::Coeff> {
        SkewElem {
            ctx: self.ctx,
            terms: BTreeMap::new(),
        }
    }

    /// `a u_n`; `a` must live over `cod(n)`.
    pub fn term(&self, a: S::Coeff, n: usize) -> Result<SkewElem<S::Coeff>> {
        let cat = self.category();
        let found = self.sys.coeff_object(&a);
        if found != cat.cod(n) {
            return Err(Error::WrongObject {
                expected: cat.object_name(cat.cod(n)).to_string(),
                found: cat.object_name(found).to_string(),
            });
        }
        let mut x = self.zero();
        if !self.sys.is_zero(&a) {
            x.terms.insert(n, a);
        }
        Ok(x)
    }

    /// `1 u_n`.
    pub fn unit_term(&self, n: usize) -> SkewElem<S::Coeff> {
        let e = self.category().cod(n);
        self.term(self.sys.one(e), n).expect("1 lives over cod(n)")
    }

    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (S::Coeff, usize)>,
    ) -> Result<SkewElem<S::Coeff>> {
        let mut x = self.zero();
        for (a, n) in terms {
            let t = self.term(a, n)?;
            x = self.add(&x, &t)?;
        }
        Ok(x)
    }

    /// `sum_e 1_e u_e`.
    pub fn identity(&self) -> SkewElem<S::Coeff> {
        let cat = self.category();
        let mut x = self.zero();
        for e in 0..cat.object_count() {
            x.terms.insert(cat.identity(e), self.sys.one(e));
        }
        x
    }

    fn check(&self, x: &SkewElem<S::Coeff>) -> Result<()> {
        if x.ctx != self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn insert_sum(&self, terms: &mut BTreeMap<usize, S::Coeff>, n: usize, a: S::Coeff) {
        match terms.get_mut(&n) {
            Some(b) => {
                *b = self.sys.add(b, &a);
                if self.sys.is_zero(b) {
                    terms.remove(&n);
                }
            }
            None => {
                if !self.sys.is_zero(&a) {
                    terms.insert(n, a);
                }
            }
        }
    }

    pub fn add(
        &self,
        x: &SkewElem<S::Coeff>,
        y: &SkewElem<S::Coeff>,
    ) -> Result<SkewElem<S::Coeff>> {
        self.check(x)?;
        self.check(y)?;
        let mut terms = x.terms.clone();
        for (&n, b) in &y.terms {
            self.insert_sum(&mut terms, n, b.clone());
        }
        Ok(SkewElem {
            ctx: self.ctx,
            terms,
        })
    }

    pub fn neg(&self, x: &SkewElem<S::Coeff>) -> Result<SkewElem<S::Coeff>> {
        self.check(x)?;
        Ok(SkewElem {
            ctx: self.ctx,
            terms: x
                .terms
                .iter()
                .map(|(&n, a)| (n, self.sys.neg(a)))
                .collect(),
        })
    }

    pub fn sub(
        &self,
        x: &SkewElem<S::Coeff>,
        y: &SkewElem<S::Coeff>,
    ) -> Result<SkewElem<S::Coeff>> {
        self.add(x, &self.neg(y)?)
    }

    /// Product over pairs of support morphisms, consulting the composition
    /// table for each composable pair.
    pub fn mul(
        &self,
        x: &SkewElem<S::Coeff>,
        y: &SkewElem<S::Coeff>,
    ) -> Result<SkewElem<S::Coeff>> {
        self.check(x)?;
        self.check(y)?;
        let cat = self.category();
        let mut terms = BTreeMap::new();
        for (&m, a) in &x.terms {
            for (&m2, b) in &y.terms {
                if !cat.is_composable(m, m2) {
                    continue;
                }
                let n = cat.compose(m, m2)?;
                let c = self.sys.mul(a, &self.sys.sigma(m, b));
                self.insert_sum(&mut terms, n, c);
            }
        }
        Ok(SkewElem {
            ctx: self.ctx,
            terms,
        })
    }

    /// Groupoid form of the product: the coefficient of `u_n` is
    /// `sum_{cod(m) = cod(n)} a_m sigma(m)(b_(m^-1 n))`.
    pub fn mul_groupoid(
        &self,
        x: &SkewElem<S::Coeff>,
        y: &SkewElem<S::Coeff>,
    ) -> Result<SkewElem<S::Coeff>> {
        self.check(x)?;
        self.check(y)?;
        let inverse = self.inverse.as_ref().ok_or(Error::NotGroupoid)?;
        let cat = self.category();
        let mut terms = BTreeMap::new();
        for n in 0..cat.morphism_count() {
            for (&m, a) in &x.terms {
                if cat.cod(m) != cat.cod(n) {
                    continue;
                }
                let k = cat.compose(inverse[m], n)?;
                if let Some(b) = y.terms.get(&k) {
                    let c = self.sys.mul(a, &self.sys.sigma(m, b));
                    self.insert_sum(&mut terms, n, c);
                }
            }
        }
        Ok(SkewElem {
            ctx: self.ctx,
            terms,
        })
    }

    pub fn dom(&self, x: &SkewElem<S::Coeff>) -> BTreeSet<usize> {
        x.terms.keys().map(|&n| self.category().dom(n)).collect()
    }

    pub fn cod(&self, x: &SkewElem<S::Coeff>) -> BTreeSet<usize> {
        x.terms.keys().map(|&n| self.category().cod(n)).collect()
    }

    fn local_unit(&self, objects: BTreeSet<usize>) -> SkewElem<S::Coeff> {
        let cat = self.category();
        SkewElem {
            ctx: self.ctx,
            terms: objects
                .into_iter()
                .map(|e| (cat.identity(e), self.sys.one(e)))
                .collect(),
        }
    }

    /// `l(x) = sum_{e in cod(x)} 1_e u_e`.
    pub fn left_unit(&self, x: &SkewElem<S::Coeff>) -> Result<SkewElem<S::Coeff>> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.local_unit(self.cod(x)))
    }

    /// `r(x) = sum_{e in dom(x)} 1_e u_e`.
    pub fn right_unit(&self, x: &SkewElem<S::Coeff>) -> Result<SkewElem<S::Coeff>> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.local_unit(self.dom(x)))
    }

    /// Checks `T_m T_n` lands in `T_(m n)` (or vanishes when `m, n` are not
    /// composable) for every pair of homogeneous components of `x` and `y`.
    pub fn grading_check(&self, x: &SkewElem<S::Coeff>, y: &SkewElem<S::Coeff>) -> bool {
        let cat = self.category();
        for (&m, a) in &x.terms {
            for (&n, b) in &y.terms {
                let left = SkewElem {
                    ctx: self.ctx,
                    terms: BTreeMap::from([(m, a.clone())]),
                };
                let right = SkewElem {
                    ctx: self.ctx,
                    terms: BTreeMap::from([(n, b.clone())]),
                };
                let Ok(product) = self.mul(&left, &right) else {
                    return false;
                };
                let ok = match cat.entry(m, n).filter(|_| cat.is_composable(m, n)) {
                    Some(k) => product.terms.keys().all(|&t| t == k),
                    None => product.is_zero(),
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    pub fn display(&self, x: &SkewElem<S::Coeff>) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let cat = self.category();
        x.terms
            .iter()
            .map(|(&n, a)| format!("{} u[{}]", self.sys.format_coeff(a), cat.morphism_name(n)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Coordinates of a function-ring algebra in the indicator basis
/// `chi_x u_n`. Basis order: objects, then morphisms with that codomain,
/// then points, each in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinates {
    basis: Vec<(usize, usize)>,
    offset: Vec<usize>,
}

impl Coordinates {
    pub fn new(cat: &FinCategory, spaces: impl Fn(usize) -> usize) -> Self {
        let mut basis = Vec::new();
        let mut offset = vec![0; cat.morphism_count()];
        for e in 0..cat.object_count() {
            for n in (0..cat.morphism_count()).filter(|&n| cat.cod(n) == e) {
                offset[n] = basis.len();
                basis.extend((0..spaces(e)).map(|x| (n, x)));
            }
        }
        Self { basis, offset }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(morphism, point)` of a basis index.
    pub fn basis_entry(&self, i: usize) -> (usize, usize) {
        self.basis[i]
    }

    pub fn index(&self, n: usize, x: usize) -> usize {
        self.offset[n] + x
    }
}

impl SkewAlgebra<FunctionRingSpec> {
    pub fn coordinates(&self) -> Coordinates {
        let sys = self.system().system();
        Coordinates::new(self.category(), |e| sys.space(e).len())
    }

    pub fn to_vector(&self, coords: &Coordinates, x: &SkewElem<FnRingElem>) -> Vec<Scalar> {
        let mut v = vec![self.system().scalar().zero(); coords.dim()];
        for (&n, a) in &x.terms {
            for (p, value) in a.values.iter().enumerate() {
                v[coords.index(n, p)] = value.clone();
            }
        }
        v
    }

    pub fn from_vector(&self, coords: &Coordinates, v: &[Scalar]) -> SkewElem<FnRingElem> {
        let spec = self.system();
        let mut terms: BTreeMap<usize, FnRingElem> = BTreeMap::new();
        for (i, value) in v.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            let (n, p) = coords.basis_entry(i);
            let entry = terms
                .entry(n)
                .or_insert_with(|| spec.zero(self.category().cod(n)));
            entry.values[p] = value.clone();
        }
        SkewElem {
            ctx: self.ctx,
            terms,
        }
    }

    /// `chi_x u_n` for a basis index.
    pub fn basis_element(&self, coords: &Coordinates, i: usize) -> SkewElem<FnRingElem> {
        let (n, x) = coords.basis_entry(i);
        let e = self.category().cod(n);
        self.term(self.system().indicator(e, x), n)
            .expect("indicator lives over cod(n)")
    }

    /// A random element; each morphism is in the support with probability
    /// `density`.
    pub fn random_element(&self, rng: &mut impl Rng, density: f64) -> SkewElem<FnRingElem> {
        let spec = self.system();
        let cat = self.category();
        let mut x = self.zero();
        for n in 0..cat.morphism_count() {
            if rng.gen_bool(density) {
                let a = spec.random_element(cat.cod(n), rng);
                if !RingElement::is_zero(&a) {
                    x.terms.insert(n, a);
                }
            }
        }
        x
    }
}
