//! Exact linear algebra over `Q` and `F_p`.
//!
//! [`SubspaceBasis`] keeps a reduced row echelon basis, so two subspaces are
//! equal exactly when their bases are. [`ModpEchelon`] is a lean `u32`
//! variant used by the exhaustive ideal searches.

use crate::coeff::{Scalar, ScalarKind};
use crate::error::{Error, Result};

/// A subspace of `K^dim` in reduced row echelon form. Rows are sorted by
/// pivot column and each pivot entry is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    kind: ScalarKind,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

fn leading(v: &[Scalar]) -> Option<usize> {
    v.iter().position(|s| !s.is_zero())
}

fn axpy(target: &mut [Scalar], c: &Scalar, row: &[Scalar]) {
    for (t, r) in target.iter_mut().zip(row) {
        if !r.is_zero() {
            *t = &*t - &(c * r);
        }
    }
}

impl SubspaceBasis {
    pub fn zero(kind: ScalarKind, dim: usize) -> Result<Self> {
        if !kind.is_field() {
            return Err(Error::NonField(kind.to_string()));
        }
        Ok(Self {
            kind,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        })
    }

    pub fn full(kind: ScalarKind, dim: usize) -> Result<Self> {
        Self::span(kind, dim, (0..dim).map(|i| unit(kind, dim, i)))
    }

    pub fn span(
        kind: ScalarKind,
        dim: usize,
        vectors: impl IntoIterator<Item = Vec<Scalar>>,
    ) -> Result<Self> {
        let mut basis = Self::zero(kind, dim)?;
        for v in vectors {
            basis.insert(v);
        }
        Ok(basis)
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivots; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        leading(&self.reduce(v)).is_none()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = leading(&r) else {
            return false;
        };
        let inv = r[p].inv().expect("field element");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                axpy(row, &c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// `self ∩ other` by the Zassenhaus construction.
    pub fn intersect(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.dim, other.dim, "ambient dimensions");
        let n = self.dim;
        let zero = self.kind.zero();
        let mut joint = SubspaceBasis::zero(self.kind, 2 * n).expect("field");
        for r in &self.rows {
            joint.insert(r.iter().chain(r).cloned().collect());
        }
        for r in &other.rows {
            joint.insert(r.iter().cloned().chain(std::iter::repeat(zero.clone()).take(n)).collect());
        }
        let mut out = SubspaceBasis::zero(self.kind, n).expect("field");
        for (row, &p) in joint.rows.iter().zip(&joint.pivots) {
            if p >= n {
                out.insert(row[n..].to_vec());
            }
        }
        out
    }

    /// Solutions of `M v = 0`, with `M` given by its rows of length `vars`.
    pub fn nullspace(kind: ScalarKind, vars: usize, equations: &[Vec<Scalar>]) -> Result<Self> {
        let echelon = Self::span(kind, vars, equations.iter().cloned())?;
        let mut out = Self::zero(kind, vars)?;
        for free in (0..vars).filter(|c| !echelon.pivots.contains(c)) {
            let mut v = vec![kind.zero(); vars];
            v[free] = kind.one();
            for (row, &p) in echelon.rows.iter().zip(&echelon.pivots) {
                v[p] = -&row[free];
            }
            out.insert(v);
        }
        Ok(out)
    }

    /// The subspace of vectors supported on `coords`.
    pub fn coordinate(kind: ScalarKind, dim: usize, coords: &[usize]) -> Result<Self> {
        Self::span(kind, dim, coords.iter().map(|&i| unit(kind, dim, i)))
    }
}

pub fn unit(kind: ScalarKind, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![kind.zero(); dim];
    v[i] = kind.one();
    v
}

/// Row echelon form over `F_p` with rows stored at their pivot column.
/// Rows are not back-substituted; only pivot positions matter to callers.
#[derive(Debug, Clone)]
pub struct ModpEchelon {
    p: u32,
    dim: usize,
    rows: Vec<Option<Vec<u32>>>,
    rank: usize,
}

impl ModpEchelon {
    pub fn new(p: u32, dim: usize) -> Self {
        Self {
            p,
            dim,
            rows: vec![None; dim],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Inserts `v`; returns the pivot column of the new row, if any.
    pub fn insert(&mut self, mut v: Vec<u32>) -> Option<usize> {
        debug_assert_eq!(v.len(), self.dim);
        let p = self.p as u64;
        for c in 0..self.dim {
            if v[c] == 0 {
                continue;
            }
            match &self.rows[c] {
                Some(row) => {
                    let f = p - v[c] as u64;
                    for k in c..self.dim {
                        if row[k] != 0 {
                            v[k] = ((v[k] as u64 + f * row[k] as u64) % p) as u32;
                        }
                    }
                }
                None => {
                    let inv = inv_mod(v[c], self.p);
                    for x in v[c..].iter_mut() {
                        *x = ((*x as u64 * inv as u64) % p) as u32;
                    }
                    self.rows[c] = Some(v);
                    self.rank += 1;
                    return Some(c);
                }
            }
        }
        None
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i64) as u32
}
