use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::RingElement;
use crate::error::Result;

/// A univariate polynomial over the rationals, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyElem {
    coeffs: Vec<BigRational>,
}

impl PolyElem {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

/// `sigma(n)(p)(X) = p(z^n X)`: the degree-`k` coefficient is scaled by
/// `z^(n k)`.
pub fn sigma_poly(n: u64, z: &BigRational, p: &PolyElem) -> PolyElem {
    let step: BigRational = Pow::pow(z.clone(), BigInt::from(n));
    let mut scale = BigRational::one();
    let mut out = Vec::with_capacity(p.coeffs.len());
    for c in &p.coeffs {
        out.push(c * &scale);
        scale *= &step;
    }
    PolyElem::new(out)
}

impl RingElement for PolyElem {
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self.add(rhs))
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(rhs))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for PolyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !magnitude.is_one();
            if show_coeff {
                if magnitude.is_integer() {
                    write!(f, "{}", magnitude.numer())?;
                } else {
                    write!(f, "{}/{}", magnitude.numer(), magnitude.denom())?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> BigRational {
        BigRational::from_integer(2.into())
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_poly(1, &two(), &PolyElem::x()), PolyElem::from_ints(&[0, 2]));
        let p = PolyElem::from_ints(&[1, 0, 1]);
        assert_eq!(sigma_poly(0, &two(), &p), p);
        assert_eq!(sigma_poly(2, &two(), &p), PolyElem::from_ints(&[1, 0, 16]));
    }

    #[test]
    fn display() {
        assert_eq!(PolyElem::from_ints(&[1, 2, 1]).to_string(), "1 + 2X + X^2");
        assert_eq!(PolyElem::from_ints(&[0, -1, 0, 3]).to_string(), "-X + 3X^3");
        assert_eq!(PolyElem::zero().to_string(), "0");
    }

    #[test]
    fn normalization() {
        let p = PolyElem::from_ints(&[1, 1]);
        assert_eq!(p.sub(&p), PolyElem::zero());
        assert_eq!(p.sub(&p).degree(), None);
        assert_eq!(PolyElem::from_ints(&[3, 0, 0]).degree(), Some(0));
    }
}
