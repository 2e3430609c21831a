use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// The scalar ring `R`: exact rationals or integers modulo `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    Zmod(u64),
}

/// An element of a [`ScalarKind`]. Arithmetic between different kinds panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Zmod { value: u64, modulus: u64 },
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl ScalarKind {
    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            ScalarKind::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            ScalarKind::Zmod(m) => Scalar::Zmod {
                value: v.rem_euclid(m as i64) as u64,
                modulus: m,
            },
        }
    }

    pub fn from_rational(self, r: &BigRational) -> Option<Scalar> {
        match self {
            ScalarKind::Rational => Some(Scalar::Rational(r.clone())),
            ScalarKind::Zmod(m) => {
                let reduce = |v: &BigInt| -> u64 {
                    let r = v.mod_floor(&BigInt::from(m));
                    u64::try_from(r).expect("residue fits")
                };
                let num = self.from_i64(reduce(r.numer()) as i64);
                let den = self.from_i64(reduce(r.denom()) as i64);
                den.inv().map(|d| num * d)
            }
        }
    }

    pub fn is_integral_domain(self) -> bool {
        match self {
            ScalarKind::Rational => true,
            ScalarKind::Zmod(m) => is_prime(m),
        }
    }

    pub fn is_field(self) -> bool {
        self.is_integral_domain()
    }

    pub fn is_finite_field(self) -> bool {
        matches!(self, ScalarKind::Zmod(m) if is_prime(m))
    }

    /// All elements, for finite rings.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            ScalarKind::Rational => None,
            ScalarKind::Zmod(m) => Some((0..m).map(|v| self.from_i64(v as i64)).collect()),
        }
    }

    /// A random element; rationals have small numerators and denominators.
    pub fn random(self, rng: &mut impl Rng) -> Scalar {
        match self {
            ScalarKind::Rational => {
                if rng.gen_bool(0.3) {
                    return self.zero();
                }
                let num: i64 = rng.gen_range(-5..=5);
                let den: i64 = rng.gen_range(1..=3);
                Scalar::Rational(BigRational::new(num.into(), den.into()))
            }
            ScalarKind::Zmod(m) => self.from_i64(rng.gen_range(0..m) as i64),
        }
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarKind::Rational => f.write_str("Q"),
            ScalarKind::Zmod(m) if is_prime(*m) => write!(f, "Fp {m}"),
            ScalarKind::Zmod(m) => write!(f, "Zmod {m}"),
        }
    }
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Zmod { modulus, .. } => ScalarKind::Zmod(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Zmod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Zmod { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, if it exists.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) if r.is_zero() => None,
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Zmod { value, modulus } => {
                let e = (*value as i64).extended_gcd(&(*modulus as i64));
                (e.gcd == 1).then(|| ScalarKind::Zmod(*modulus).from_i64(e.x))
            }
        }
    }

    fn same_kind(&self, other: &Scalar) {
        assert_eq!(
            self.kind(),
            other.kind(),
            "scalar arithmetic across different rings"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Zmod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.same_kind(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Zmod { value: a, modulus }, Scalar::Zmod { value: b, .. }) => Scalar::Zmod {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.same_kind(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Zmod { value: a, modulus }, Scalar::Zmod { value: b, .. }) => Scalar::Zmod {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Zmod { value, modulus } => Scalar::Zmod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Mul::mul, Sub::sub);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Parses `3`, `-2`, `1/2` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    (!den.is_zero()).then(|| BigRational::new(num, den))
}
