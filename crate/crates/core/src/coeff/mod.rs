//! Coefficient rings `A_e` and the twisting maps `sigma(n)`.
//!
//! Every implementation is exact. Function rings are the workhorse; the
//! polynomial ring backs the truncated `N`-monoid algebra and formal symbols
//! reproduce products with unspecified coefficients.

mod formal;
mod poly;
mod scalar;

use std::sync::Arc;

pub use formal::{sigma_formal, FormalElem, FormalSystem, Generator};
pub use poly::{sigma_poly, PolyElem};
pub use scalar::{is_prime, parse_rational, Scalar, ScalarKind};

use crate::dynsys::{FinDynSys, PointSet};
use crate::error::{Error, Result};

/// Commutative ring elements whose operands may come from incompatible rings.
pub trait RingElement: Sized {
    fn try_add(&self, rhs: &Self) -> Result<Self>;
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    fn is_zero(&self) -> bool;
}

/// Whether `y` lies in `Ann(x)`, i.e. `x * y == 0`.
pub fn in_annihilator<T: RingElement>(x: &T, y: &T) -> Result<bool> {
    Ok(x.try_mul(y)?.is_zero())
}

impl RingElement for Scalar {
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        check_kinds(self.kind(), rhs.kind())?;
        Ok(self + rhs)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        check_kinds(self.kind(), rhs.kind())?;
        Ok(self * rhs)
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

fn check_kinds(a: ScalarKind, b: ScalarKind) -> Result<()> {
    if a != b {
        return Err(Error::RingMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// Which subring of `C(s(e), R)` is used for `A_e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingFlavor {
    /// All functions `s(e) -> R`.
    Full,
    /// Constant functions only; a diagnostic for the `Per_A` inclusions.
    ConstantsOnly,
}

/// A validated system together with the scalar ring of its function rings.
#[derive(Debug, Clone)]
pub struct FunctionRingSpec {
    sys: Arc<FinDynSys>,
    scalar: ScalarKind,
    flavor: RingFlavor,
}

/// A function `s(object) -> R`, stored by its values in carrier order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FnRingElem {
    pub object: usize,
    pub values: Vec<Scalar>,
}

impl FunctionRingSpec {
    pub fn new(sys: FinDynSys, scalar: ScalarKind) -> Result<Self> {
        Self::with_flavor(sys, scalar, RingFlavor::Full)
    }

    pub fn constants_only(sys: FinDynSys, scalar: ScalarKind) -> Result<Self> {
        Self::with_flavor(sys, scalar, RingFlavor::ConstantsOnly)
    }

    fn with_flavor(sys: FinDynSys, scalar: ScalarKind, flavor: RingFlavor) -> Result<Self> {
        if let ScalarKind::Zmod(m) = scalar {
            if m < 2 {
                return Err(Error::RingMismatch(format!("modulus {m} is below 2")));
            }
        }
        if let Some(v) = sys.category().validate().violations.first() {
            return Err(Error::InvalidSystem(v.to_string()));
        }
        if let Some(v) = sys.validate_action().violations.first() {
            return Err(Error::InvalidSystem(v.to_string()));
        }
        Ok(Self {
            sys: Arc::new(sys),
            scalar,
            flavor,
        })
    }

    pub fn system(&self) -> &FinDynSys {
        &self.sys
    }

    pub fn scalar(&self) -> ScalarKind {
        self.scalar
    }

    pub fn flavor(&self) -> RingFlavor {
        self.flavor
    }

    pub fn zero(&self, e: usize) -> FnRingElem {
        self.constant(e, self.scalar.zero())
    }

    /// `1_e`, sending every point to `1_R`.
    pub fn one(&self, e: usize) -> FnRingElem {
        self.constant(e, self.scalar.one())
    }

    pub fn constant(&self, e: usize, c: Scalar) -> FnRingElem {
        FnRingElem {
            object: e,
            values: vec![c; self.sys.space(e).len()],
        }
    }

    pub fn indicator(&self, e: usize, x: usize) -> FnRingElem {
        let mut f = self.zero(e);
        f.values[x] = self.scalar.one();
        f
    }

    pub fn from_values(&self, e: usize, values: Vec<Scalar>) -> Result<FnRingElem> {
        if values.len() != self.sys.space(e).len() {
            return Err(Error::InvalidSystem(format!(
                "function over {} needs {} values",
                self.sys.category().object_name(e),
                self.sys.space(e).len()
            )));
        }
        for v in &values {
            check_kinds(self.scalar, v.kind())?;
        }
        Ok(FnRingElem { object: e, values })
    }

    /// `sigma(n)(f) = f o s(n)`, taking `A_dom(n)` to `A_cod(n)`.
    pub fn sigma(&self, n: usize, f: &FnRingElem) -> Result<FnRingElem> {
        let cat = self.sys.category();
        if f.object != cat.dom(n) {
            return Err(Error::WrongObject {
                expected: cat.object_name(cat.dom(n)).to_string(),
                found: cat.object_name(f.object).to_string(),
            });
        }
        Ok(FnRingElem {
            object: cat.cod(n),
            values: self
                .sys
                .action(n)
                .iter()
                .map(|&y| f.values[y].clone())
                .collect(),
        })
    }

    pub fn random_element(&self, e: usize, rng: &mut impl rand::Rng) -> FnRingElem {
        FnRingElem {
            object: e,
            values: (0..self.sys.space(e).len())
                .map(|_| self.scalar.random(rng))
                .collect(),
        }
    }
}

/// Free function form of [`FunctionRingSpec::sigma`].
pub fn sigma_fn(spec: &FunctionRingSpec, n: usize, f: &FnRingElem) -> Result<FnRingElem> {
    spec.sigma(n, f)
}

/// `Supp(f)`: the points where `f` is nonzero.
pub fn support(f: &FnRingElem) -> PointSet {
    PointSet::new(
        f.object,
        f.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(x, _)| x),
    )
}

impl FnRingElem {
    fn zip(&self, rhs: &Self, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        if self.object != rhs.object || self.values.len() != rhs.values.len() {
            return Err(Error::RingMismatch(format!(
                "functions over objects {} and {}",
                self.object, rhs.object
            )));
        }
        if let (Some(a), Some(b)) = (self.values.first(), rhs.values.first()) {
            check_kinds(a.kind(), b.kind())?;
        }
        Ok(Self {
            object: self.object,
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            object: self.object,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            object: self.object,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

impl RingElement for FnRingElem {
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a + b)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a * b)
    }

    fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{example19_discrete, swap_system};

    fn f2(sys: FinDynSys) -> FunctionRingSpec {
        FunctionRingSpec::new(sys, ScalarKind::Zmod(2)).unwrap()
    }

    #[test]
    fn sigma_abs_of_indicator() {
        let spec = f2(example19_discrete());
        let sys = spec.system();
        let cat = sys.category();
        let x = cat.object_index("X").unwrap();
        let abs = cat.morphism_index("abs").unwrap();
        let one = sys.point_index(x, "1").unwrap();
        let minus = sys.point_index(x, "-1").unwrap();
        let image = spec.sigma(abs, &spec.indicator(x, one)).unwrap();
        let expected = spec
            .indicator(x, minus)
            .try_add(&spec.indicator(x, one))
            .unwrap();
        assert_eq!(image, expected);
        assert_eq!(
            sys.describe_set(&support(&image)),
            "{-1, 1}"
        );
        let id = cat.identity(x);
        assert_eq!(spec.sigma(id, &image).unwrap(), image);
    }

    #[test]
    fn sigma_swap_moves_indicator() {
        let spec = f2(swap_system());
        let g = spec.system().category().morphism_index("g").unwrap();
        assert_eq!(spec.sigma(g, &spec.indicator(0, 0)).unwrap(), spec.indicator(0, 1));
    }

    #[test]
    fn sigma_checks_object() {
        let spec = f2(example19_discrete());
        let cat = spec.system().category();
        let sqr = cat.morphism_index("sqr").unwrap();
        let x = cat.object_index("X").unwrap();
        assert!(matches!(
            spec.sigma(sqr, &spec.one(x)),
            Err(Error::WrongObject { .. })
        ));
    }

    #[test]
    fn annihilators() {
        let z4 = ScalarKind::Zmod(4);
        assert!(in_annihilator(&z4.from_i64(2), &z4.from_i64(2)).unwrap());
        assert!(!in_annihilator(&z4.from_i64(2), &z4.from_i64(1)).unwrap());
        assert!(in_annihilator(&z4.from_i64(3), &z4.zero()).unwrap());
        assert!(matches!(
            in_annihilator(&z4.one(), &ScalarKind::Zmod(2).one()),
            Err(Error::RingMismatch(_))
        ));

        let spec = f2(swap_system());
        assert!(in_annihilator(&spec.indicator(0, 0), &spec.indicator(0, 1)).unwrap());
        assert!(!in_annihilator(&spec.indicator(0, 0), &spec.one(0)).unwrap());
    }

    #[test]
    fn supports() {
        let spec = f2(example19_discrete());
        let x = spec.system().category().object_index("X").unwrap();
        assert_eq!(support(&spec.indicator(x, 1)).points, [1].into());
        assert_eq!(support(&spec.one(x)), spec.system().full_set(x));
        assert!(support(&spec.zero(x)).is_empty());
    }
}
