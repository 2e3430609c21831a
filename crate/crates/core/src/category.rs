//! Finite categories given by explicit composition tables.
//!
//! Morphisms are addressed by their declaration index. `compose(m, n)` is the
//! composite "m after n" and is defined exactly when `dom(m) == cod(n)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Name prefix carried by synthesized identity morphisms.
pub const IDENTITY_PREFIX: &str = "id_";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(String);

impl ObjectId {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphismId(String);

impl MorphismId {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn identity_of(object: &ObjectId) -> Self {
        Self(format!("{IDENTITY_PREFIX}{object}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MorphismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: MorphismId,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category. Construction checks names only; table-level laws are
/// checked by [`FinCategory::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<ObjectId>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    table: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A composable pair with no table entry.
    MissingComposite { m: String, n: String },
    /// A table entry for a pair with `dom(m) != cod(n)`.
    NonComposableEntry { m: String, n: String },
    /// `m . n = k` with `dom(k) != dom(n)` or `cod(k) != cod(m)`.
    CompositeType { m: String, n: String, composite: String },
    /// `id_cod(n) . n != n`.
    LeftIdentity { n: String, found: String },
    /// `n . id_dom(n) != n`.
    RightIdentity { n: String, found: String },
    Associativity { m: String, n: String, p: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingComposite { m, n } => write!(f, "missing composite {m} . {n}"),
            Violation::NonComposableEntry { m, n } => {
                write!(f, "entry for non-composable pair {m} . {n}")
            }
            Violation::CompositeType { m, n, composite } => {
                write!(f, "composite {m} . {n} = {composite} has the wrong domain or codomain")
            }
            Violation::LeftIdentity { n, found } => {
                write!(f, "left identity law fails for {n} (got {found})")
            }
            Violation::RightIdentity { n, found } => {
                write!(f, "right identity law fails for {n} (got {found})")
            }
            Violation::Associativity { m, n, p } => {
                write!(f, "associativity fails for ({m}, {n}, {p})")
            }
        }
    }
}

/// Violations found by a validation pass; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Builds a [`FinCategory`] from names. Identities are synthesized for every
/// object that lacks an explicit `id_<object>` morphism, and composites with
/// identities are filled in unless given explicitly.
#[derive(Debug, Clone, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    entries: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn morphism(&mut self, name: &str, dom: &str, cod: &str) -> &mut Self {
        self.morphisms
            .push((name.to_string(), dom.to_string(), cod.to_string()));
        self
    }

    /// Records the table entry `m . n = composite`.
    pub fn compose(&mut self, m: &str, n: &str, composite: &str) -> &mut Self {
        self.entries
            .push((m.to_string(), n.to_string(), composite.to_string()));
        self
    }

    pub fn build(&self) -> Result<FinCategory> {
        let mut objects = Vec::new();
        let mut object_index = HashMap::new();
        for name in &self.objects {
            if name.is_empty() || object_index.insert(name.clone(), objects.len()).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
            objects.push(ObjectId::new(name.clone()));
        }
        let lookup_obj = |name: &str| {
            object_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownObject(name.to_string()))
        };

        let mut identity = vec![usize::MAX; objects.len()];
        let mut morphisms = Vec::new();
        let mut mor_index: HashMap<String, usize> = HashMap::new();
        for (name, dom, cod) in &self.morphisms {
            let (dom, cod) = (lookup_obj(dom)?, lookup_obj(cod)?);
            if name.is_empty() || mor_index.insert(name.clone(), morphisms.len()).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
            if let Some(obj) = name.strip_prefix(IDENTITY_PREFIX) {
                if let Some(&e) = object_index.get(obj) {
                    if dom != e || cod != e {
                        return Err(Error::InvalidIdentity(name.clone()));
                    }
                    identity[e] = morphisms.len();
                }
            }
            morphisms.push(Morphism {
                name: MorphismId::new(name.clone()),
                dom,
                cod,
            });
        }
        for (e, obj) in objects.iter().enumerate() {
            if identity[e] == usize::MAX {
                let name = MorphismId::identity_of(obj);
                if mor_index
                    .insert(name.as_str().to_string(), morphisms.len())
                    .is_some()
                {
                    return Err(Error::DuplicateName(name.to_string()));
                }
                identity[e] = morphisms.len();
                morphisms.push(Morphism { name, dom: e, cod: e });
            }
        }

        let count = morphisms.len();
        let mut table = vec![None; count * count];
        let lookup_mor = |name: &str| {
            mor_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
        };
        for (m, n, k) in &self.entries {
            let (m, n, k) = (lookup_mor(m)?, lookup_mor(n)?, lookup_mor(k)?);
            table[m * count + n] = Some(k);
        }
        for n in 0..count {
            let left = identity[morphisms[n].cod];
            table[left * count + n].get_or_insert(n);
            let right = identity[morphisms[n].dom];
            table[n * count + right].get_or_insert(n);
        }
        Ok(FinCategory {
            objects,
            morphisms,
            identity,
            table,
        })
    }
}

impl FinCategory {
    /// Assembles a category from index data. `compose` is queried on every
    /// pair with `dom(m) == cod(n)`.
    pub fn from_parts(
        objects: Vec<ObjectId>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Self {
        let count = morphisms.len();
        let mut table = vec![None; count * count];
        for m in 0..count {
            for n in 0..count {
                if morphisms[m].dom == morphisms[n].cod {
                    table[m * count + n] = compose(m, n);
                }
            }
        }
        Self {
            objects,
            morphisms,
            identity,
            table,
        }
    }

    /// Overwrites one table entry. Used to build deliberately broken tables.
    pub fn set_entry(&mut self, m: usize, n: usize, composite: Option<usize>) {
        let count = self.morphisms.len();
        self.table[m * count + n] = composite;
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn dom(&self, n: usize) -> usize {
        self.morphisms[n].dom
    }

    pub fn cod(&self, n: usize) -> usize {
        self.morphisms[n].cod
    }

    pub fn identity(&self, e: usize) -> usize {
        self.identity[e]
    }

    pub fn is_identity(&self, n: usize) -> bool {
        self.identity[self.morphisms[n].dom] == n
    }

    pub fn object_name(&self, e: usize) -> &ObjectId {
        &self.objects[e]
    }

    pub fn morphism_name(&self, n: usize) -> &MorphismId {
        &self.morphisms[n].name
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o.as_str() == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism_index(&self, name: &str) -> Result<usize> {
        self.morphisms
            .iter()
            .position(|m| m.name.as_str() == name)
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    /// Raw table lookup, `None` for pairs without an entry.
    pub fn entry(&self, m: usize, n: usize) -> Option<usize> {
        self.table[m * self.morphisms.len() + n]
    }

    pub fn is_composable(&self, m: usize, n: usize) -> bool {
        self.dom(m) == self.cod(n)
    }

    pub fn compose(&self, m: usize, n: usize) -> Result<usize> {
        if !self.is_composable(m, n) {
            return Err(self.not_composable(m, n));
        }
        self.entry(m, n).ok_or_else(|| self.not_composable(m, n))
    }

    pub fn compose_named(&self, m: &str, n: &str) -> Result<&MorphismId> {
        let k = self.compose(self.morphism_index(m)?, self.morphism_index(n)?)?;
        Ok(self.morphism_name(k))
    }

    fn not_composable(&self, m: usize, n: usize) -> Error {
        Error::NotComposable(
            self.morphism_name(m).to_string(),
            self.morphism_name(n).to_string(),
        )
    }

    /// Endomorphisms at `e` in declaration order.
    pub fn endomorphisms(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len())
            .filter(move |&n| self.morphisms[n].dom == e && self.morphisms[n].cod == e)
    }

    pub fn validate(&self) -> ValidationReport<Violation> {
        let count = self.morphisms.len();
        let name = |n: usize| self.morphisms[n].name.to_string();
        let mut violations = Vec::new();
        for m in 0..count {
            for n in 0..count {
                match (self.is_composable(m, n), self.entry(m, n)) {
                    (true, None) => violations.push(Violation::MissingComposite {
                        m: name(m),
                        n: name(n),
                    }),
                    (false, Some(_)) => violations.push(Violation::NonComposableEntry {
                        m: name(m),
                        n: name(n),
                    }),
                    (true, Some(k)) => {
                        if self.dom(k) != self.dom(n) || self.cod(k) != self.cod(m) {
                            violations.push(Violation::CompositeType {
                                m: name(m),
                                n: name(n),
                                composite: name(k),
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for n in 0..count {
            let left = self.entry(self.identity[self.cod(n)], n);
            if left != Some(n) {
                violations.push(Violation::LeftIdentity {
                    n: name(n),
                    found: left.map_or_else(|| "*".to_string(), name),
                });
            }
            let right = self.entry(n, self.identity[self.dom(n)]);
            if right != Some(n) {
                violations.push(Violation::RightIdentity {
                    n: name(n),
                    found: right.map_or_else(|| "*".to_string(), name),
                });
            }
        }
        for m in 0..count {
            for n in 0..count {
                if !self.is_composable(m, n) {
                    continue;
                }
                for p in 0..count {
                    if !self.is_composable(n, p) {
                        continue;
                    }
                    let left = self.entry(m, n).and_then(|mn| self.entry(mn, p));
                    let right = self.entry(n, p).and_then(|np| self.entry(m, np));
                    if left != right {
                        violations.push(Violation::Associativity {
                            m: name(m),
                            n: name(n),
                            p: name(p),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Inverse table `n -> n^-1` when every morphism is invertible.
    pub fn is_groupoid(&self) -> Option<Vec<usize>> {
        let count = self.morphisms.len();
        (0..count)
            .map(|n| {
                let (d, c) = (self.dom(n), self.cod(n));
                (0..count).find(|&k| {
                    self.dom(k) == c
                        && self.cod(k) == d
                        && self.entry(n, k) == Some(self.identity[c])
                        && self.entry(k, n) == Some(self.identity[d])
                })
            })
            .collect()
    }

    pub fn endo_monoid(&self, e: usize) -> Result<EndoMonoid> {
        if e >= self.objects.len() {
            return Err(Error::UnknownObject(e.to_string()));
        }
        let elements: Vec<usize> = self.endomorphisms(e).collect();
        let position: BTreeMap<usize, usize> =
            elements.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let table = elements
            .iter()
            .map(|&m| {
                elements
                    .iter()
                    .map(|&n| {
                        let k = self.entry(m, n).expect("valid category");
                        position[&k]
                    })
                    .collect()
            })
            .collect();
        Ok(EndoMonoid {
            object: e,
            identity: position[&self.identity[e]],
            elements,
            table,
        })
    }

    pub fn opposite(&self) -> FinCategory {
        let count = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                dom: m.cod,
                cod: m.dom,
            })
            .collect();
        let mut table = vec![None; count * count];
        for m in 0..count {
            for n in 0..count {
                table[m * count + n] = self.table[n * count + m];
            }
        }
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            table,
        }
    }
}

/// The endomorphism monoid `G_e` with its induced table. Elements are
/// positions into `elements`; `table[i][j]` is the position of `i . j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoMonoid {
    pub object: usize,
    pub elements: Vec<usize>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl EndoMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// For all distinct `m, n` there is `p` with `m = n p` or `n = m p`.
    pub fn is_divisible(&self) -> bool {
        let size = self.elements.len();
        (0..size).all(|m| {
            (0..size).all(|n| {
                m == n || (0..size).any(|p| self.table[n][p] == m || self.table[m][p] == n)
            })
        })
    }

    pub fn is_closed(&self) -> bool {
        self.table
            .iter()
            .all(|row| row.len() == self.len() && row.iter().all(|&k| k < self.len()))
    }
}
