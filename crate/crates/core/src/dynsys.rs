//! Finite discrete category dynamical systems and partially defined systems.
//!
//! A system assigns a finite point set `s(e)` to each object and a set map
//! `s(n): s(cod n) -> s(dom n)` to each morphism, contravariantly:
//! `s(m . n) = s(n) o s(m)`. All spaces carry the discrete topology, so
//! "dense" means "everything".

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::category::{FinCategory, Morphism, ObjectId, ValidationReport};
use crate::coeff::{FunctionRingSpec, RingFlavor};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDynSys {
    cat: FinCategory,
    spaces: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

/// A subset of the carrier over one object, as indices into that carrier.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSet {
    pub object: usize,
    pub points: BTreeSet<usize>,
}

impl PointSet {
    pub fn new(object: usize, points: impl IntoIterator<Item = usize>) -> Self {
        Self {
            object,
            points: points.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.points.contains(&x)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.object == other.object && self.points.is_subset(&other.points)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionViolation {
    /// `s(n)` is not a total map `s(cod n) -> s(dom n)`.
    MapShape { n: String },
    /// `s(id_e)` moves `point`.
    Identity { object: String, point: String },
    /// `s(m . n)(point) != s(n)(s(m)(point))`.
    Functor { m: String, n: String, point: String },
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionViolation::MapShape { n } => write!(f, "map {n} is not total on its carrier"),
            ActionViolation::Identity { object, point } => {
                write!(f, "identity of {object} moves {point}")
            }
            ActionViolation::Functor { m, n, point } => {
                write!(f, "s({m} . {n}) != s({n}) o s({m}) at {point}")
            }
        }
    }
}

/// Topological freeness together with every periodic point found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessReport {
    pub free: bool,
    /// `(object, point, nonidentity endomorphism fixing the point)`.
    pub witnesses: Vec<(usize, usize, usize)>,
}

impl FinDynSys {
    /// Wraps index data without checks; see [`FinDynSys::validate_action`].
    pub fn new(cat: FinCategory, spaces: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Self {
        Self { cat, spaces, action }
    }

    /// Builds a system from point labels. Maps for identities may be omitted.
    pub fn from_labels(
        cat: FinCategory,
        spaces: &[(&str, Vec<String>)],
        maps: &[(&str, Vec<(String, String)>)],
    ) -> Result<Self> {
        let mut carrier = vec![None; cat.object_count()];
        for (obj, points) in spaces {
            let e = cat.object_index(obj)?;
            let mut seen = BTreeSet::new();
            for p in points {
                if !seen.insert(p) {
                    return Err(Error::DuplicateName(p.clone()));
                }
            }
            carrier[e] = Some(points.clone());
        }
        let spaces: Vec<Vec<String>> = carrier
            .into_iter()
            .enumerate()
            .map(|(e, s)| {
                s.ok_or_else(|| {
                    Error::InvalidSystem(format!("no space declared for {}", cat.object_name(e)))
                })
            })
            .collect::<Result<_>>()?;
        let mut action: Vec<Option<Vec<usize>>> = vec![None; cat.morphism_count()];
        for (name, pairs) in maps {
            let n = cat.morphism_index(name)?;
            let (src, dst) = (cat.cod(n), cat.dom(n));
            let mut image = vec![usize::MAX; spaces[src].len()];
            for (from, to) in pairs {
                let i = point_index(&cat, &spaces, src, from)?;
                let j = point_index(&cat, &spaces, dst, to)?;
                if image[i] != usize::MAX && image[i] != j {
                    return Err(Error::InvalidSystem(format!(
                        "map {name} sends {from} to two points"
                    )));
                }
                image[i] = j;
            }
            if let Some(i) = image.iter().position(|&j| j == usize::MAX) {
                return Err(Error::InvalidSystem(format!(
                    "map {name} is undefined at {}",
                    spaces[src][i]
                )));
            }
            action[n] = Some(image);
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(n, a)| match a {
                Some(a) => Ok(a),
                None if cat.is_identity(n) => Ok((0..spaces[cat.dom(n)].len()).collect()),
                None => Err(Error::InvalidSystem(format!(
                    "no map declared for {}",
                    cat.morphism_name(n)
                ))),
            })
            .collect::<Result<_>>()?;
        Ok(Self { cat, spaces, action })
    }

    /// Turns a covariant left action `alpha(n): s(dom n) -> s(cod n)` of a
    /// groupoid into a system via `s(n) = alpha(n^-1)`.
    pub fn from_left_action(
        cat: FinCategory,
        spaces: Vec<Vec<String>>,
        alpha: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let inverse = cat.is_groupoid().ok_or(Error::NotGroupoid)?;
        let action = inverse.iter().map(|&k| alpha[k].clone()).collect();
        Ok(Self { cat, spaces, action })
    }

    pub fn category(&self) -> &FinCategory {
        &self.cat
    }

    pub fn space(&self, e: usize) -> &[String] {
        &self.spaces[e]
    }

    /// The map `s(n)` as indices from `s(cod n)` into `s(dom n)`.
    pub fn action(&self, n: usize) -> &[usize] {
        &self.action[n]
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.action[n][x]
    }

    pub fn point_index(&self, e: usize, label: &str) -> Result<usize> {
        point_index(&self.cat, &self.spaces, e, label)
    }

    pub fn point_label(&self, e: usize, x: usize) -> &str {
        &self.spaces[e][x]
    }

    pub fn full_set(&self, e: usize) -> PointSet {
        PointSet::new(e, 0..self.spaces[e].len())
    }

    /// `sum_n |s(cod n)|`, the dimension of the skew category algebra over a
    /// field when every `A_e` is the full function ring.
    pub fn algebra_dimension(&self) -> usize {
        (0..self.cat.morphism_count())
            .map(|n| self.spaces[self.cat.cod(n)].len())
            .sum()
    }

    /// `sum_e |s(e)|`, the dimension of `A` itself.
    pub fn base_dimension(&self) -> usize {
        self.spaces.iter().map(Vec::len).sum()
    }

    pub fn validate_action(&self) -> ValidationReport<ActionViolation> {
        let cat = &self.cat;
        let mut violations = Vec::new();
        let mut well_shaped = vec![true; cat.morphism_count()];
        for n in 0..cat.morphism_count() {
            let shape_ok = self.action.get(n).is_some_and(|a| {
                a.len() == self.spaces[cat.cod(n)].len()
                    && a.iter().all(|&j| j < self.spaces[cat.dom(n)].len())
            });
            if !shape_ok {
                well_shaped[n] = false;
                violations.push(ActionViolation::MapShape {
                    n: cat.morphism_name(n).to_string(),
                });
            }
        }
        for e in 0..cat.object_count() {
            let id = cat.identity(e);
            if !well_shaped[id] {
                continue;
            }
            for x in 0..self.spaces[e].len() {
                if self.action[id][x] != x {
                    violations.push(ActionViolation::Identity {
                        object: cat.object_name(e).to_string(),
                        point: self.spaces[e][x].clone(),
                    });
                }
            }
        }
        for m in 0..cat.morphism_count() {
            for n in 0..cat.morphism_count() {
                if !cat.is_composable(m, n) || !well_shaped[m] || !well_shaped[n] {
                    continue;
                }
                let Some(mn) = cat.entry(m, n) else { continue };
                if !well_shaped[mn] {
                    continue;
                }
                for x in 0..self.spaces[cat.cod(m)].len() {
                    if self.action[mn][x] != self.action[n][self.action[m][x]] {
                        violations.push(ActionViolation::Functor {
                            m: cat.morphism_name(m).to_string(),
                            n: cat.morphism_name(n).to_string(),
                            point: self.spaces[cat.cod(m)][x].clone(),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    fn check_endo(&self, e: usize, n: usize) -> Result<()> {
        if self.cat.dom(n) != e || self.cat.cod(n) != e {
            return Err(Error::NotEndomorphism {
                morphism: self.cat.morphism_name(n).to_string(),
                object: self.cat.object_name(e).to_string(),
            });
        }
        Ok(())
    }

    /// Points of `s(e)` fixed by `s(n)`.
    pub fn per_set(&self, e: usize, n: usize) -> Result<PointSet> {
        self.check_endo(e, n)?;
        Ok(PointSet::new(
            e,
            (0..self.spaces[e].len()).filter(|&x| self.action[n][x] == x),
        ))
    }

    /// Points of `s(e)` moved by `s(n)`.
    pub fn sep_set(&self, e: usize, n: usize) -> Result<PointSet> {
        self.check_endo(e, n)?;
        Ok(PointSet::new(
            e,
            (0..self.spaces[e].len()).filter(|&x| self.action[n][x] != x),
        ))
    }

    /// Points where every function of the ring agrees with its twist by
    /// `sigma(n)`. Only a spanning set of the ring is consulted, since the
    /// condition is linear in the function.
    pub fn per_a_set(&self, ring: &FunctionRingSpec, e: usize, n: usize) -> Result<PointSet> {
        self.check_endo(e, n)?;
        let size = self.spaces[e].len();
        let spanning: Vec<Vec<bool>> = match ring.flavor() {
            RingFlavor::Full => (0..size).map(|y| (0..size).map(|x| x == y).collect()).collect(),
            RingFlavor::ConstantsOnly => vec![vec![true; size]],
        };
        Ok(PointSet::new(
            e,
            (0..size).filter(|&x| {
                spanning
                    .iter()
                    .all(|f| f[x] == f[self.action[n][x]])
            }),
        ))
    }

    pub fn sep_a_set(&self, ring: &FunctionRingSpec, e: usize, n: usize) -> Result<PointSet> {
        let per = self.per_a_set(ring, e, n)?;
        Ok(PointSet::new(
            e,
            (0..self.spaces[e].len()).filter(|x| !per.contains(*x)),
        ))
    }

    /// The aperiodic points at `e`: the intersection of `sep_set(e, n)` over
    /// all nonidentity `n` in `G_e`, which is all of `s(e)` when there are none.
    /// This set carries the name `Per^oo` although it collects moved points.
    pub fn aperiodic_set(&self, e: usize) -> PointSet {
        let mut points = self.full_set(e).points;
        for n in self.cat.endomorphisms(e) {
            if self.cat.is_identity(n) {
                continue;
            }
            points.retain(|&x| self.action[n][x] != x);
        }
        PointSet { object: e, points }
    }

    pub fn is_topologically_free(&self) -> FreenessReport {
        let mut witnesses = Vec::new();
        for e in 0..self.cat.object_count() {
            let aperiodic = self.aperiodic_set(e);
            for x in 0..self.spaces[e].len() {
                if aperiodic.contains(x) {
                    continue;
                }
                let n = self
                    .cat
                    .endomorphisms(e)
                    .find(|&n| !self.cat.is_identity(n) && self.action[n][x] == x)
                    .expect("periodic point has a fixing endomorphism");
                witnesses.push((e, x, n));
            }
        }
        FreenessReport {
            free: witnesses.is_empty(),
            witnesses,
        }
    }

    /// Evaluates the relations between the fixed and moved point sets of
    /// `n` in `G_e`, labelled `a` through `g`, plus `per_a_exact` (the ring
    /// detects exactly the fixed points) when the ring is full with at least
    /// two elements. Each entry is `(label, holds)`.
    pub fn set_identities(
        &self,
        ring: &FunctionRingSpec,
        e: usize,
        n: usize,
    ) -> Result<Vec<(&'static str, bool)>> {
        let per = self.per_set(e, n)?;
        let sep = self.sep_set(e, n)?;
        let per_a = self.per_a_set(ring, e, n)?;
        let sep_a = self.sep_a_set(ring, e, n)?;
        let full = self.full_set(e).points;
        let complement = |s: &PointSet| -> BTreeSet<usize> { full.difference(&s.points).copied().collect() };
        let mut out = vec![
            ("a", complement(&sep_a) == per_a.points),
            ("b", complement(&sep) == per.points),
            ("c", complement(&per_a) == sep_a.points),
            ("d", complement(&per) == sep.points),
            ("e", per.is_subset(&per_a)),
            ("f", sep_a.is_subset(&sep)),
            (
                "g",
                self.cat.is_identity(n) || self.aperiodic_set(e).is_subset(&sep),
            ),
        ];
        if ring.flavor() == RingFlavor::Full && ring.scalar().elements().map_or(true, |r| r.len() >= 2) {
            out.push(("per_a_exact", per == per_a && sep == sep_a));
        }
        Ok(out)
    }

    /// `{ s(n)(x) | n in G_e }`.
    pub fn orbit(&self, e: usize, x: usize) -> Result<PointSet> {
        if x >= self.spaces[e].len() {
            return Err(Error::UnknownPoint {
                object: self.cat.object_name(e).to_string(),
                point: x.to_string(),
            });
        }
        Ok(PointSet::new(
            e,
            self.cat.endomorphisms(e).map(|n| self.action[n][x]),
        ))
    }

    pub fn describe_set(&self, set: &PointSet) -> String {
        let labels: Vec<&str> = set
            .points
            .iter()
            .map(|&x| self.spaces[set.object][x].as_str())
            .collect();
        format!("{{{}}}", labels.join(", "))
    }
}

fn point_index(cat: &FinCategory, spaces: &[Vec<String>], e: usize, label: &str) -> Result<usize> {
    spaces[e]
        .iter()
        .position(|p| p == label)
        .ok_or_else(|| Error::UnknownPoint {
            object: cat.object_name(e).to_string(),
            point: label.to_string(),
        })
}

/// A map between subsets of the ambient set, stored by ambient indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMap {
    pub name: String,
    pub dom: BTreeSet<usize>,
    pub cod: BTreeSet<usize>,
    pub graph: BTreeMap<usize, usize>,
}

impl PartialMap {
    fn key(&self) -> MapKey {
        (
            self.dom.clone(),
            self.cod.clone(),
            self.graph.iter().map(|(&a, &b)| (a, b)).collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.graph.iter().all(|(a, b)| a == b)
    }

    pub fn is_endo(&self) -> bool {
        self.dom == self.cod
    }

    /// `self o other`, defined when `dom(self) == cod(other)`.
    fn after(&self, other: &PartialMap) -> PartialMap {
        PartialMap {
            name: format!("{}∘{}", self.name, other.name),
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            graph: other
                .graph
                .iter()
                .map(|(&x, y)| (x, self.graph[y]))
                .collect(),
        }
    }
}

type MapKey = (BTreeSet<usize>, BTreeSet<usize>, Vec<(usize, usize)>);

/// A family of maps between subsets of a finite ambient set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialSystem {
    ambient: Vec<String>,
    subsets: Vec<(String, BTreeSet<usize>)>,
    maps: Vec<PartialMap>,
}

impl PartialSystem {
    pub fn new(ambient: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &ambient {
            if !seen.insert(p) {
                return Err(Error::DuplicateName(p.clone()));
            }
        }
        Ok(Self {
            ambient,
            subsets: Vec::new(),
            maps: Vec::new(),
        })
    }

    pub fn ambient(&self) -> &[String] {
        &self.ambient
    }

    pub fn maps(&self) -> &[PartialMap] {
        &self.maps
    }

    pub fn subsets(&self) -> &[(String, BTreeSet<usize>)] {
        &self.subsets
    }

    pub fn ambient_index(&self, label: &str) -> Result<usize> {
        self.ambient
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::UnknownPoint {
                object: "ambient".to_string(),
                point: label.to_string(),
            })
    }

    pub fn subset_indices(&self, labels: &[&str]) -> Result<BTreeSet<usize>> {
        labels.iter().map(|l| self.ambient_index(l)).collect()
    }

    /// Names a subset so that its object and identity carry that name.
    pub fn name_subset(&mut self, name: &str, points: BTreeSet<usize>) -> Result<()> {
        if self.subsets.iter().any(|(n, s)| n == name || *s == points) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.subsets.push((name.to_string(), points));
        Ok(())
    }

    pub fn subset_by_name(&self, name: &str) -> Option<&BTreeSet<usize>> {
        self.subsets.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn add_map(
        &mut self,
        name: &str,
        dom: BTreeSet<usize>,
        cod: BTreeSet<usize>,
        graph: BTreeMap<usize, usize>,
    ) -> Result<()> {
        if self.maps.iter().any(|m| m.name == name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        if dom.is_empty() || graph.keys().copied().collect::<BTreeSet<_>>() != dom {
            return Err(Error::InvalidSystem(format!(
                "map {name} must be defined exactly on its nonempty domain"
            )));
        }
        if !graph.values().all(|y| cod.contains(y)) {
            return Err(Error::InvalidSystem(format!(
                "map {name} leaves its codomain"
            )));
        }
        self.maps.push(PartialMap {
            name: name.to_string(),
            dom,
            cod,
            graph,
        });
        Ok(())
    }

    pub fn subset_name(&self, set: &BTreeSet<usize>) -> String {
        if let Some((name, _)) = self.subsets.iter().find(|(_, s)| s == set) {
            return name.clone();
        }
        let labels: Vec<&str> = set.iter().map(|&x| self.ambient[x].as_str()).collect();
        format!("{{{}}}", labels.join(","))
    }

    fn identity_map(&self, set: &BTreeSet<usize>) -> PartialMap {
        PartialMap {
            name: format!("id_{}", self.subset_name(set)),
            dom: set.clone(),
            cod: set.clone(),
            graph: set.iter().map(|&x| (x, x)).collect(),
        }
    }

    /// The least superset containing identities of all domains and codomains
    /// and closed under composition. Maps equal as functions are merged.
    pub fn close(&self) -> PartialSystem {
        let mut maps: Vec<PartialMap> = Vec::new();
        let mut keys: HashMap<MapKey, usize> = HashMap::new();
        let mut push = |maps: &mut Vec<PartialMap>, map: PartialMap| {
            let key = map.key();
            if keys.contains_key(&key) {
                return false;
            }
            keys.insert(key, maps.len());
            maps.push(map);
            true
        };
        for map in &self.maps {
            push(&mut maps, map.clone());
        }
        let mut done = 0;
        while done < maps.len() {
            let current = maps.len();
            for i in 0..current {
                for set in [maps[i].dom.clone(), maps[i].cod.clone()] {
                    let id = self.identity_map(&set);
                    push(&mut maps, id);
                }
            }
            for i in 0..current {
                for j in 0..current {
                    if i < done && j < done {
                        continue;
                    }
                    if maps[i].dom == maps[j].cod {
                        let composite = maps[i].after(&maps[j]);
                        push(&mut maps, composite);
                    }
                }
            }
            done = current;
        }
        PartialSystem {
            ambient: self.ambient.clone(),
            subsets: self.subsets.clone(),
            maps,
        }
    }

    fn closure_defect(&self) -> Option<String> {
        let keys: BTreeSet<MapKey> = self.maps.iter().map(PartialMap::key).collect();
        for f in &self.maps {
            for set in [&f.dom, &f.cod] {
                if !keys.contains(&self.identity_map(set).key()) {
                    return Some(format!("identity of {} missing", self.subset_name(set)));
                }
            }
            for g in &self.maps {
                if f.dom == g.cod && !keys.contains(&f.after(g).key()) {
                    return Some(format!("composite {}∘{} missing", f.name, g.name));
                }
            }
        }
        None
    }

    pub fn is_closed(&self) -> bool {
        self.closure_defect().is_none()
    }

    /// Ambient points fixed by some nonidentity endomap.
    pub fn periodic_points(&self) -> BTreeSet<usize> {
        self.maps
            .iter()
            .filter(|f| f.is_endo() && !f.is_identity())
            .flat_map(|f| f.graph.iter().filter(|(x, y)| x == y).map(|(&x, _)| x))
            .collect()
    }

    pub fn is_topologically_free(&self) -> bool {
        self.periodic_points().is_empty()
    }

    /// The category system on the opposite of the category of these maps.
    pub fn to_category_system(&self) -> Result<FinDynSys> {
        if let Some(defect) = self.closure_defect() {
            return Err(Error::NotClosed(defect));
        }
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        let used: BTreeSet<&BTreeSet<usize>> = self
            .maps
            .iter()
            .flat_map(|m| [&m.dom, &m.cod])
            .collect();
        for (_, s) in &self.subsets {
            if used.contains(s) && !sets.contains(s) {
                sets.push(s.clone());
            }
        }
        for m in &self.maps {
            for s in [&m.dom, &m.cod] {
                if !sets.contains(s) {
                    sets.push(s.clone());
                }
            }
        }
        let object_of = |s: &BTreeSet<usize>| sets.iter().position(|t| t == s).unwrap();
        let objects: Vec<ObjectId> = sets
            .iter()
            .map(|s| ObjectId::new(self.subset_name(s)))
            .collect();
        let morphisms: Vec<Morphism> = self
            .maps
            .iter()
            .map(|m| Morphism {
                name: crate::category::MorphismId::new(m.name.clone()),
                dom: object_of(&m.dom),
                cod: object_of(&m.cod),
            })
            .collect();
        let keys: HashMap<MapKey, usize> = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| (m.key(), i))
            .collect();
        let identity = sets
            .iter()
            .map(|s| keys[&self.identity_map(s).key()])
            .collect();
        let concrete = FinCategory::from_parts(objects, morphisms, identity, |f, g| {
            keys.get(&self.maps[f].after(&self.maps[g]).key()).copied()
        });
        let cat = concrete.opposite();
        let spaces: Vec<Vec<String>> = sets
            .iter()
            .map(|s| s.iter().map(|&x| self.ambient[x].clone()).collect())
            .collect();
        let position = |s: &BTreeSet<usize>, x: usize| s.iter().position(|&y| y == x).unwrap();
        let action = self
            .maps
            .iter()
            .map(|m| {
                m.dom
                    .iter()
                    .map(|x| position(&m.cod, m.graph[x]))
                    .collect()
            })
            .collect();
        Ok(FinDynSys::new(cat, spaces, action))
    }
}
