//! Formal coefficients: polynomials in symbols `b o s(m)`.
//!
//! A base symbol `b` is a function on `s(home(b))`. The generator
//! `Generator { symbol: b, via: m }` with `dom(m) = home(b)` stands for
//! `b o s(m)`, a function over `cod(m)`. Twisting by `sigma(n)` rewrites
//! `b o s(m)` to `b o s(m) o s(n) = b o s(n . m)`, so generators stay
//! normalized through the composition table.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::RingElement;
use crate::category::FinCategory;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub symbol: usize,
    pub via: usize,
}

type Monomial = Vec<(Generator, u32)>;

/// A polynomial with rational coefficients in commuting generators, living
/// over one object.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalElem {
    pub object: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// A category together with named base symbols and their home objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSystem {
    cat: FinCategory,
    symbols: Vec<(String, usize)>,
}

impl FormalSystem {
    pub fn new(cat: FinCategory) -> Result<Self> {
        if let Some(v) = cat.validate().violations.first() {
            return Err(Error::InvalidSystem(v.to_string()));
        }
        Ok(Self {
            cat,
            symbols: Vec::new(),
        })
    }

    pub fn category(&self) -> &FinCategory {
        &self.cat
    }

    pub fn declare(&mut self, name: &str, home: &str) -> Result<usize> {
        if self.symbols.iter().any(|(s, _)| s == name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let home = self.cat.object_index(home)?;
        self.symbols.push((name.to_string(), home));
        Ok(self.symbols.len() - 1)
    }

    pub fn symbol_index(&self, name: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|(s, _)| s == name)
            .ok_or_else(|| Error::InvalidSystem(format!("unknown symbol `{name}`")))
    }

    pub fn symbol_name(&self, symbol: usize) -> &str {
        &self.symbols[symbol].0
    }

    pub fn home(&self, symbol: usize) -> usize {
        self.symbols[symbol].1
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(s, h)| (s.as_str(), *h))
    }

    /// The base symbol itself, `b o s(id)`.
    pub fn symbol(&self, name: &str) -> Result<FormalElem> {
        let b = self.symbol_index(name)?;
        self.generator(b, self.cat.identity(self.home(b)))
    }

    /// `b o s(m)`; requires `dom(m) = home(b)`.
    pub fn generator(&self, symbol: usize, via: usize) -> Result<FormalElem> {
        if self.cat.dom(via) != self.home(symbol) {
            return Err(Error::NotComposable(
                self.symbol_name(symbol).to_string(),
                self.cat.morphism_name(via).to_string(),
            ));
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![(Generator { symbol, via }, 1)], BigRational::one());
        Ok(FormalElem {
            object: self.cat.cod(via),
            terms,
        })
    }

    pub fn display(&self, x: &FormalElem) -> String {
        FormalDisplay { sys: self, x }.to_string()
    }

    pub fn display_generator(&self, g: Generator) -> String {
        if self.cat.is_identity(g.via) {
            self.symbol_name(g.symbol).to_string()
        } else {
            format!(
                "{}∘{}",
                self.symbol_name(g.symbol),
                self.cat.morphism_name(g.via)
            )
        }
    }
}

/// Rewrites every generator `b o s(m)` of `x` to `b o s(n . m)`.
pub fn sigma_formal(cat: &FinCategory, n: usize, x: &FormalElem) -> Result<FormalElem> {
    if x.object != cat.dom(n) {
        return Err(Error::NotComposable(
            cat.morphism_name(n).to_string(),
            cat.object_name(x.object).to_string(),
        ));
    }
    let mut out = FormalElem::zero(cat.cod(n));
    for (mono, c) in &x.terms {
        let mut image = Vec::with_capacity(mono.len());
        for &(g, e) in mono {
            let via = cat.compose(n, g.via)?;
            image.push((Generator { symbol: g.symbol, via }, e));
        }
        out.add_term(normalize(image), c.clone());
    }
    Ok(out)
}

fn normalize(mut mono: Monomial) -> Monomial {
    mono.sort();
    let mut out: Monomial = Vec::with_capacity(mono.len());
    for (g, e) in mono {
        match out.last_mut() {
            Some((h, f)) if *h == g => *f += e,
            _ => out.push((g, e)),
        }
    }
    out
}

impl FormalElem {
    pub fn zero(object: usize) -> Self {
        Self {
            object,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(object: usize, c: BigRational) -> Self {
        let mut x = Self::zero(object);
        x.add_term(Vec::new(), c);
        x
    }

    pub fn one(object: usize) -> Self {
        Self::constant(object, BigRational::one())
    }

    fn add_term(&mut self, mono: Monomial, c: BigRational) {
        let entry = self.terms.entry(mono).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// `(generators with multiplicity, coefficient)` per term.
    pub fn terms(&self) -> impl Iterator<Item = (&[(Generator, u32)], &BigRational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.object != rhs.object {
            return Err(Error::RingMismatch(format!(
                "formal elements over objects {} and {}",
                self.object, rhs.object
            )));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        Self {
            object: self.object,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.object);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }
}

impl RingElement for FormalElem {
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = Self::zero(self.object);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mono = normalize(m1.iter().chain(m2).copied().collect());
                out.add_term(mono, c1 * c2);
            }
        }
        Ok(out)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

struct FormalDisplay<'a> {
    sys: &'a FormalSystem,
    x: &'a FormalElem,
}

impl fmt::Display for FormalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.x.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || mono.is_empty() {
                factors.push(if magnitude.is_integer() {
                    magnitude.numer().to_string()
                } else {
                    format!("{}/{}", magnitude.numer(), magnitude.denom())
                });
            }
            for &(g, e) in mono {
                let shown = self.sys.display_generator(g);
                let shown = if self.sys.cat.is_identity(g.via) {
                    shown
                } else {
                    format!("({shown})")
                };
                if e == 1 {
                    factors.push(shown);
                } else {
                    factors.push(format!("{shown}^{e}"));
                }
            }
            f.write_str(&factors.join(" "))?;
        }
        Ok(())
    }
}
