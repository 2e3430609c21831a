//! The skew monoid algebra `Q[X] x N` with `sigma(n)(p)(X) = p(z^n X)`, kept
//! to monoid degrees at most a fixed bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{sigma_poly, PolyElem, RingElement};
use crate::error::{Error, Result};

/// `sum_n p_n u_n` with `n <= bound`; zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NElem {
    terms: BTreeMap<u64, PolyElem>,
}

impl NElem {
    pub fn coeff(&self, n: u64) -> PolyElem {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &PolyElem)> {
        self.terms.iter().map(|(&n, p)| (n, p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedMonoidAlgebra {
    z: BigRational,
    bound: u64,
}

impl TruncatedMonoidAlgebra {
    pub fn new(z: BigRational, bound: u64) -> Self {
        Self { z, bound }
    }

    pub fn z(&self) -> &BigRational {
        &self.z
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn sigma(&self, n: u64, p: &PolyElem) -> PolyElem {
        sigma_poly(n, &self.z, p)
    }

    /// `p u_n`.
    pub fn term(&self, p: PolyElem, n: u64) -> Result<NElem> {
        if n > self.bound {
            return Err(Error::TruncationExceeded { bound: self.bound as usize });
        }
        let mut x = NElem::default();
        if !p.is_zero() {
            x.terms.insert(n, p);
        }
        Ok(x)
    }

    pub fn add(&self, x: &NElem, y: &NElem) -> NElem {
        let mut out = x.clone();
        for (&n, q) in &y.terms {
            let sum = out.coeff(n).add(q);
            if sum.is_zero() {
                out.terms.remove(&n);
            } else {
                out.terms.insert(n, sum);
            }
        }
        out
    }

    /// `(p u_n)(q u_m) = p sigma(n)(q) u_(n+m)`; fails rather than drop
    /// terms past the bound.
    pub fn mul(&self, x: &NElem, y: &NElem) -> Result<NElem> {
        let mut out = NElem::default();
        for (&n, p) in &x.terms {
            for (&m, q) in &y.terms {
                let degree = n + m;
                if degree > self.bound {
                    return Err(Error::TruncationExceeded { bound: self.bound as usize });
                }
                let term = self.term(p.mul(&self.sigma(n, q)), degree)?;
                out = self.add(&out, &term);
            }
        }
        Ok(out)
    }

    /// Random element with monoid degrees and polynomial degrees at most
    /// `degree` and small integer coefficients.
    pub fn random_element(&self, rng: &mut impl Rng, degree: u64) -> NElem {
        let mut x = NElem::default();
        for n in 0..=degree.min(self.bound) {
            if rng.gen_bool(0.5) {
                let coeffs = (0..=degree)
                    .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
                    .collect();
                let p = PolyElem::new(coeffs);
                if !p.is_zero() {
                    x.terms.insert(n, p);
                }
            }
        }
        x
    }
}

/// Evidence that `A = Q[X]` is maximal commutative in `Q[X] x N` while the
/// ideal generated by `u_1` misses `A`.
#[derive(Debug, Clone)]
pub struct Prop9bReport {
    pub degree_bound: u64,
    /// `(n, sigma(n)(X))` for `1 <= n <= N`.
    pub sigma_images: Vec<(u64, PolyElem)>,
    pub samples: usize,
    /// Samples whose `u_0` coefficient of `x u_1 y` vanished.
    pub zero_u0: usize,
}

impl Prop9bReport {
    pub fn sigma_moves_x(&self) -> bool {
        self.sigma_images.iter().all(|(_, p)| *p != PolyElem::x())
    }

    pub fn ideal_misses_a(&self) -> bool {
        self.zero_u0 == self.samples
    }

    pub fn holds(&self) -> bool {
        self.sigma_moves_x() && self.ideal_misses_a()
    }
}

/// With `z = 2`: checks `sigma(n)(X) != X` for `1 <= n <= N` and that the
/// `u_0` coefficient of `x u_1 y` vanishes for `samples` random `x, y` of
/// degree at most `N`. Products reach degree `2N + 1`, which is the
/// truncation used.
pub fn prop9b_counterexample(degree_bound: u64, samples: usize, seed: u64) -> Result<Prop9bReport> {
    if degree_bound < 2 {
        return Err(Error::InvalidSystem("degree bound must be at least 2".into()));
    }
    let alg = TruncatedMonoidAlgebra::new(BigRational::from_integer(2.into()), 2 * degree_bound + 1);
    let sigma_images = (1..=degree_bound)
        .map(|n| (n, alg.sigma(n, &PolyElem::x())))
        .collect();
    let u1 = alg.term(PolyElem::one(), 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero_u0 = 0;
    for _ in 0..samples {
        let x = alg.random_element(&mut rng, degree_bound);
        let y = alg.random_element(&mut rng, degree_bound);
        let product = alg.mul(&alg.mul(&x, &u1)?, &y)?;
        if product.coeff(0).is_zero() {
            zero_u0 += 1;
        }
    }
    Ok(Prop9bReport {
        degree_bound,
        sigma_images,
        samples,
        zero_u0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> BigRational {
        BigRational::from_integer(2.into())
    }

    #[test]
    fn products_twist_coefficients() {
        let alg = TruncatedMonoidAlgebra::new(two(), 4);
        let x = alg.term(PolyElem::one(), 1).unwrap();
        let y = alg.term(PolyElem::x(), 2).unwrap();
        let product = alg.mul(&x, &y).unwrap();
        assert_eq!(product.coeff(3), PolyElem::from_ints(&[0, 2]));
        assert_eq!(product.max_degree(), Some(3));
    }

    #[test]
    fn truncation_is_reported() {
        let alg = TruncatedMonoidAlgebra::new(two(), 2);
        let x = alg.term(PolyElem::one(), 2).unwrap();
        assert!(matches!(
            alg.mul(&x, &x),
            Err(Error::TruncationExceeded { bound: 2 })
        ));
        assert!(alg.term(PolyElem::one(), 3).is_err());
    }

    #[test]
    fn report_holds_at_small_scale() {
        let report = prop9b_counterexample(3, 20, 1).unwrap();
        assert!(report.holds());
        assert_eq!(report.sigma_images[0].1, PolyElem::from_ints(&[0, 2]));
        assert!(prop9b_counterexample(1, 1, 0).is_err());
    }
}
