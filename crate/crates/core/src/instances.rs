//! Fixed example systems, a library of small groups and seeded random
//! instances.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{CategoryBuilder, FinCategory, Morphism, MorphismId, ObjectId};
use crate::coeff::FormalSystem;
use crate::dynsys::{FinDynSys, PartialSystem};
use crate::error::{Error, Result};

fn labels(points: &[&str]) -> Vec<String> {
    points.iter().map(|p| p.to_string()).collect()
}

fn pairs(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

/// The category `P` of maps `sqr: X -> Y`, `sqrt: Y -> X`, `abs: X -> X`
/// under ordinary composition.
pub fn example19_p() -> FinCategory {
    CategoryBuilder::new()
        .object("X")
        .object("Y")
        .morphism("id_X", "X", "X")
        .morphism("id_Y", "Y", "Y")
        .morphism("sqr", "X", "Y")
        .morphism("sqrt", "Y", "X")
        .morphism("abs", "X", "X")
        .compose("sqr", "sqrt", "id_Y")
        .compose("sqr", "abs", "sqr")
        .compose("sqrt", "sqr", "abs")
        .compose("abs", "sqrt", "sqrt")
        .compose("abs", "abs", "abs")
        .build()
        .expect("fixture table")
}

/// `G = P^op`.
pub fn example19_g() -> FinCategory {
    example19_p().opposite()
}

/// `G` acting on `X = {-1, 0, 1}` and `Y = {0, 1}` by the evident maps.
pub fn example19_discrete() -> FinDynSys {
    FinDynSys::from_labels(
        example19_g(),
        &[("X", labels(&["-1", "0", "1"])), ("Y", labels(&["0", "1"]))],
        &[
            ("sqr", pairs(&[("-1", "1"), ("0", "0"), ("1", "1")])),
            ("sqrt", pairs(&[("0", "0"), ("1", "1")])),
            ("abs", pairs(&[("-1", "1"), ("0", "0"), ("1", "1")])),
        ],
    )
    .expect("fixture system")
}

/// The unclosed family `{sqr, sqrt, abs}` on the discrete model.
pub fn example19_partial() -> PartialSystem {
    let mut p = PartialSystem::new(labels(&["-1", "0", "1"])).expect("distinct labels");
    let x = p.subset_indices(&["-1", "0", "1"]).unwrap();
    let y = p.subset_indices(&["0", "1"]).unwrap();
    p.name_subset("X", x.clone()).unwrap();
    p.name_subset("Y", y.clone()).unwrap();
    let (m1, z, p1) = (0, 1, 2);
    p.add_map("sqr", x.clone(), y.clone(), [(m1, p1), (z, z), (p1, p1)].into())
        .unwrap();
    p.add_map("sqrt", y, x.clone(), [(z, z), (p1, p1)].into()).unwrap();
    p.add_map("abs", x.clone(), x, [(m1, p1), (z, z), (p1, p1)].into())
        .unwrap();
    p
}

/// `G` with the symbols `f_X, f_X', g_X, g_X', h_X, h_X'` over `X` and
/// `f_Y, f_Y', g_Y, g_Y'` over `Y`.
pub fn example19_formal() -> FormalSystem {
    let mut sys = FormalSystem::new(example19_g()).expect("valid category");
    for name in ["f_X", "f_X'", "g_X", "g_X'", "h_X", "h_X'"] {
        sys.declare(name, "X").unwrap();
    }
    for name in ["f_Y", "f_Y'", "g_Y", "g_Y'"] {
        sys.declare(name, "Y").unwrap();
    }
    sys
}

/// The two factors as `(morphism, symbol)` terms, unprimed then primed.
pub const EXAMPLE19_FACTORS: [[(&str, &str); 5]; 2] = [
    [
        ("id_X", "f_X"),
        ("abs", "g_X"),
        ("sqr", "h_X"),
        ("id_Y", "f_Y"),
        ("sqrt", "g_Y"),
    ],
    [
        ("id_X", "f_X'"),
        ("abs", "g_X'"),
        ("sqr", "h_X'"),
        ("id_Y", "f_Y'"),
        ("sqrt", "g_Y'"),
    ],
];

/// A monomial factor: a symbol and the morphism it is composed with
/// (`None` for the symbol itself).
pub type FormalFactor = (&'static str, Option<&'static str>);

/// The displayed expansion of the product of the two factors, coefficient by
/// coefficient.
pub const EXAMPLE19_PRODUCT: [(&str, &[[FormalFactor; 2]]); 5] = [
    ("id_X", &[[("f_X", None), ("f_X'", None)]]),
    (
        "abs",
        &[
            [("f_X", None), ("g_X'", None)],
            [("g_X", None), ("f_X'", Some("abs"))],
            [("g_X", None), ("g_X'", Some("abs"))],
            [("h_X", None), ("g_Y'", Some("sqr"))],
        ],
    ),
    (
        "sqr",
        &[
            [("f_X", None), ("h_X'", None)],
            [("h_X", None), ("f_Y'", Some("sqr"))],
            [("g_X", None), ("h_X'", Some("abs"))],
        ],
    ),
    (
        "id_Y",
        &[
            [("f_Y", None), ("f_Y'", None)],
            [("g_Y", None), ("h_X'", Some("sqrt"))],
        ],
    ),
    (
        "sqrt",
        &[
            [("f_Y", None), ("g_Y'", None)],
            [("g_Y", None), ("f_X'", Some("sqrt"))],
            [("g_Y", None), ("g_X'", Some("sqrt"))],
        ],
    ),
];

/// Names of the cyclic group elements: `id_pt`, `g`, `g^2`, ...
fn cyclic_name(k: usize) -> String {
    match k {
        0 => "id_pt".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{k}"),
    }
}

/// `Z/n` as a one-object category on the object `pt`.
pub fn cyclic_group_category(n: usize) -> FinCategory {
    FiniteGroup::cyclic(n).category()
}

/// `Z/2 = {id_pt, g}` acting on `{0, 1}` by the swap.
pub fn swap_system() -> FinDynSys {
    FinDynSys::from_labels(
        cyclic_group_category(2),
        &[("pt", labels(&["0", "1"]))],
        &[("g", pairs(&[("0", "1"), ("1", "0")]))],
    )
    .expect("fixture system")
}

/// `Z/2` acting trivially on a single point.
pub fn trivial_z2_on_point() -> FinDynSys {
    FinDynSys::from_labels(
        cyclic_group_category(2),
        &[("pt", labels(&["p"]))],
        &[("g", pairs(&[("p", "p")]))],
    )
    .expect("fixture system")
}

/// `Z/4` acting on `{0, 1}` through its quotient `Z/2`.
pub fn z4_through_z2() -> FinDynSys {
    let swap = pairs(&[("0", "1"), ("1", "0")]);
    let fix = pairs(&[("0", "0"), ("1", "1")]);
    FinDynSys::from_labels(
        cyclic_group_category(4),
        &[("pt", labels(&["0", "1"]))],
        &[("g", swap.clone()), ("g^2", fix), ("g^3", swap)],
    )
    .expect("fixture system")
}

/// The monoid `{id, const0}` of self-maps of `{0, 1}`.
pub fn const0_monoid() -> FinDynSys {
    let mut p = PartialSystem::new(labels(&["0", "1"])).expect("distinct labels");
    let d: BTreeSet<usize> = [0, 1].into();
    p.name_subset("D", d.clone()).unwrap();
    p.add_map("const0", d.clone(), d, [(0, 0), (1, 0)].into()).unwrap();
    p.close().to_category_system().expect("closed")
}

/// One arrow `f: X -> Y` between singletons: no nonidentity endomorphisms,
/// yet the ideal generated by `u_f` misses the coefficient ring.
pub fn single_arrow_system() -> FinDynSys {
    let mut p = PartialSystem::new(labels(&["x", "y"])).expect("distinct labels");
    let (x, y): (BTreeSet<usize>, BTreeSet<usize>) = ([0].into(), [1].into());
    p.name_subset("X", x.clone()).unwrap();
    p.name_subset("Y", y.clone()).unwrap();
    p.add_map("f", x, y, [(0, 1)].into()).unwrap();
    p.close().to_category_system().expect("closed")
}

/// A finite group by its multiplication table; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub table: Vec<Vec<usize>>,
    cyclic_names: bool,
}

impl FiniteGroup {
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Self {
        Self {
            name: name.to_string(),
            table,
            cyclic_names: false,
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == 0)
            .expect("group element has an inverse")
    }

    pub fn cyclic(n: usize) -> Self {
        Self {
            name: format!("Z{n}"),
            table: (0..n)
                .map(|i| (0..n).map(|j| (i + j) % n).collect())
                .collect(),
            cyclic_names: true,
        }
    }

    /// Dihedral group of order `2n`: `r^i s^j` stored as `i + n j`.
    pub fn dihedral(n: usize) -> Self {
        let decode = |a: usize| (a % n, a / n);
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let ((i, j), (k, l)) = (decode(a), decode(b));
                        // r^i s^j r^k s^l = r^(i +- k) s^(j + l)
                        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                        rot + n * ((j + l) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&format!("D{}", 2 * n), table)
    }

    pub fn quaternion() -> Self {
        // units +-1, +-i, +-j, +-k as (sign, unit) with unit in 1, i, j, k.
        let unit_mul = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let decode = |a: usize| (if a < 4 { 1 } else { -1 }, a % 4);
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let ((sa, ua), (sb, ub)) = (decode(a), decode(b));
                        let (s, u) = unit_mul[ua][ub];
                        u + if sa * sb * s == 1 { 0 } else { 4 }
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", table)
    }

    pub fn product(&self, other: &FiniteGroup) -> Self {
        let m = other.order();
        let size = self.order() * m;
        let table = (0..size)
            .map(|a| {
                (0..size)
                    .map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m))
                    .collect()
            })
            .collect();
        Self::from_table(&format!("{}x{}", self.name, other.name), table)
    }

    pub fn element_name(&self, a: usize) -> String {
        if self.cyclic_names {
            cyclic_name(a)
        } else if a == 0 {
            "id_pt".to_string()
        } else {
            format!("h{a}")
        }
    }

    /// The group as a one-object category on `pt`.
    pub fn category(&self) -> FinCategory {
        let n = self.order();
        let morphisms = (0..n)
            .map(|a| Morphism {
                name: MorphismId::new(self.element_name(a)),
                dom: 0,
                cod: 0,
            })
            .collect();
        FinCategory::from_parts(vec![ObjectId::new("pt")], morphisms, vec![0], |a, b| {
            Some(self.mul(a, b))
        })
    }

    /// The subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut sub: BTreeSet<usize> = [0].into();
        let mut frontier = vec![0];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if sub.insert(b) {
                    frontier.push(b);
                }
            }
        }
        sub
    }

    /// Left cosets `gH`, each as a sorted list of elements.
    pub fn cosets(&self, subgroup: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
        for g in 0..self.order() {
            let coset: BTreeSet<usize> = subgroup.iter().map(|&h| self.mul(g, h)).collect();
            if !cosets.contains(&coset) {
                cosets.push(coset);
            }
        }
        cosets
    }
}

/// All groups of order at most 8, up to isomorphism.
pub fn group_library() -> Vec<FiniteGroup> {
    let z = FiniteGroup::cyclic;
    vec![
        z(1),
        z(2),
        z(3),
        z(4),
        z(2).product(&z(2)),
        z(5),
        z(6),
        FiniteGroup::dihedral(3),
        z(7),
        z(8),
        z(4).product(&z(2)),
        z(2).product(&z(2)).product(&z(2)),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
    ]
}

/// A left action of `group` on a disjoint union of coset spaces: the
/// points and, for each element, the permutation of point positions.
fn coset_action(group: &FiniteGroup, subgroups: &[BTreeSet<usize>]) -> (Vec<String>, Vec<Vec<usize>>) {
    let mut points: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    for (k, h) in subgroups.iter().enumerate() {
        points.extend(group.cosets(h).into_iter().map(|c| (k, c)));
    }
    let names = points
        .iter()
        .map(|(k, c)| format!("{}H{}", c.iter().next().unwrap(), k))
        .collect();
    let alpha = (0..group.order())
        .map(|g| {
            points
                .iter()
                .map(|(k, c)| {
                    let image: BTreeSet<usize> = c.iter().map(|&x| group.mul(g, x)).collect();
                    points
                        .iter()
                        .position(|(l, d)| l == k && *d == image)
                        .expect("cosets are permuted")
                })
                .collect()
        })
        .collect();
    (names, alpha)
}

fn random_subgroup(group: &FiniteGroup, rng: &mut ChaCha8Rng) -> BTreeSet<usize> {
    let gens: Vec<usize> = (1..group.order()).filter(|_| rng.gen_bool(0.3)).collect();
    group.generated(&gens)
}

fn random_group_set(
    group: &FiniteGroup,
    rng: &mut ChaCha8Rng,
) -> (Vec<String>, Vec<Vec<usize>>) {
    let count = rng.gen_range(1..=2);
    let subgroups: Vec<BTreeSet<usize>> =
        (0..count).map(|_| random_subgroup(group, rng)).collect();
    coset_action(group, &subgroups)
}

/// Families of random systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    GroupAction,
    MultiObjectGroupoid,
    TransformationMonoid,
    PartialSystem,
}

impl Profile {
    pub const ALL: [Profile; 4] = [
        Profile::GroupAction,
        Profile::MultiObjectGroupoid,
        Profile::TransformationMonoid,
        Profile::PartialSystem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::GroupAction => "group-action",
            Profile::MultiObjectGroupoid => "multi-object-groupoid",
            Profile::TransformationMonoid => "transformation-monoid",
            Profile::PartialSystem => "partial-system",
        }
    }

    pub fn is_groupoid(self) -> bool {
        matches!(self, Profile::GroupAction | Profile::MultiObjectGroupoid)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidSystem(format!("unknown profile `{s}`")))
    }
}

pub const DEFAULT_MAX_DIM: usize = 32;

const MAX_ATTEMPTS: usize = 100_000;

/// A random system of the given profile whose algebra has dimension at most
/// `max_dim`. Deterministic in `seed`.
pub fn random_instance(seed: u64, profile: Profile, max_dim: usize) -> FinDynSys {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let candidate = match profile {
            Profile::GroupAction => random_group_action(&mut rng),
            Profile::MultiObjectGroupoid => random_groupoid(&mut rng),
            Profile::TransformationMonoid => random_monoid(&mut rng),
            Profile::PartialSystem => random_partial(&mut rng),
        };
        if let Some(sys) = candidate {
            if sys.algebra_dimension() <= max_dim {
                return sys;
            }
        }
    }
    panic!("no {profile} instance of dimension <= {max_dim} for seed {seed}");
}

fn random_group_action(rng: &mut ChaCha8Rng) -> Option<FinDynSys> {
    let group = group_library().choose(rng).unwrap().clone();
    let (points, alpha) = random_group_set(&group, rng);
    FinDynSys::from_left_action(group.category(), vec![points], alpha).ok()
}

/// `group x` the pair groupoid on two or three objects, each object
/// carrying a relabeled copy of one `group`-set.
fn random_groupoid(rng: &mut ChaCha8Rng) -> Option<FinDynSys> {
    let group = group_library()
        .into_iter()
        .filter(|g| g.order() <= 4)
        .collect::<Vec<_>>()
        .choose(rng)
        .unwrap()
        .clone();
    let k = rng.gen_range(2..=3);
    let (points, alpha) = random_group_set(&group, rng);
    let size = points.len();
    // position p of object i holds point perm[i][p] of the group-set
    let perms: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            let mut p: Vec<usize> = (0..size).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let objects: Vec<ObjectId> = (0..k).map(|i| ObjectId::new(format!("o{i}"))).collect();
    let n = group.order();
    // morphism (g, i <- j) has index g + n (j + k i); dom j, cod i
    let index = |g: usize, i: usize, j: usize| g + n * (j + k * i);
    let mut morphisms = Vec::with_capacity(n * k * k);
    for i in 0..k {
        for j in 0..k {
            for g in 0..n {
                let name = if g == 0 && i == j {
                    format!("id_o{i}")
                } else {
                    format!("h{g}_{i}{j}")
                };
                morphisms.push(Morphism {
                    name: MorphismId::new(name),
                    dom: j,
                    cod: i,
                });
            }
        }
    }
    let identity = (0..k).map(|i| index(0, i, i)).collect();
    let decode = |m: usize| (m % n, (m / n) % k, m / (n * k));
    let cat = FinCategory::from_parts(objects, morphisms, identity, |a, b| {
        let ((g, _, i), (h, l, _)) = (decode(a), decode(b));
        Some(index(group.mul(g, h), i, l))
    });
    let spaces: Vec<Vec<String>> = (0..k)
        .map(|i| perms[i].iter().map(|&x| format!("{}", points[x])).collect())
        .collect();
    let alpha = (0..n * k * k)
        .map(|m| {
            let (g, j, i) = decode(m);
            (0..size)
                .map(|p| {
                    let target = alpha[g][perms[j][p]];
                    perms[i].iter().position(|&q| q == target).unwrap()
                })
                .collect()
        })
        .collect();
    FinDynSys::from_left_action(cat, spaces, alpha).ok()
}

fn random_graph(
    rng: &mut ChaCha8Rng,
    dom: &BTreeSet<usize>,
    cod: &BTreeSet<usize>,
) -> BTreeMap<usize, usize> {
    let targets: Vec<usize> = cod.iter().copied().collect();
    dom.iter()
        .map(|&x| (x, *targets.choose(rng).unwrap()))
        .collect()
}

fn random_monoid(rng: &mut ChaCha8Rng) -> Option<FinDynSys> {
    let size = rng.gen_range(2..=4);
    let ambient: Vec<String> = (0..size).map(|x| x.to_string()).collect();
    let mut p = PartialSystem::new(ambient).ok()?;
    let d: BTreeSet<usize> = (0..size).collect();
    p.name_subset("D", d.clone()).ok()?;
    for name in ["f", "g"].iter().take(rng.gen_range(1..=2)) {
        let graph = random_graph(rng, &d, &d);
        p.add_map(name, d.clone(), d.clone(), graph).ok()?;
    }
    limited_closure(&p)
}

fn random_partial(rng: &mut ChaCha8Rng) -> Option<FinDynSys> {
    limited_closure(&partial_generators(rng)?)
}

/// Random generating maps between random subsets, before closure.
/// Deterministic in `seed`.
pub fn random_partial_generators(seed: u64) -> PartialSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(p) = partial_generators(&mut rng) {
            return p;
        }
    }
}

fn partial_generators(rng: &mut ChaCha8Rng) -> Option<PartialSystem> {
    let size = rng.gen_range(2..=4);
    let ambient: Vec<String> = (0..size).map(|x| x.to_string()).collect();
    let mut p = PartialSystem::new(ambient).ok()?;
    let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
    for _ in 0..rng.gen_range(2..=3) {
        let s: BTreeSet<usize> = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() && !subsets.contains(&s) {
            subsets.push(s);
        }
    }
    for (i, s) in subsets.iter().enumerate() {
        p.name_subset(&format!("S{i}"), s.clone()).ok()?;
    }
    for name in ["f", "g", "h"].iter().take(rng.gen_range(1..=3)) {
        let dom = subsets.choose(rng)?.clone();
        let cod = subsets.choose(rng)?.clone();
        let graph = random_graph(rng, &dom, &cod);
        p.add_map(name, dom, cod, graph).ok()?;
    }
    Some(p)
}

fn limited_closure(p: &PartialSystem) -> Option<FinDynSys> {
    let closed = p.close();
    if closed.maps().len() > 64 {
        return None;
    }
    closed.to_category_system().ok()
}
