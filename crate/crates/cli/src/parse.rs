//! Line-oriented system files.
//!
//! ```text
//! # the acting category G: morphism n : dom -> cod
//! object X Y
//! morphism f : X -> Y
//! compose f . id_X = f
//! # s(n) maps the space over cod(n) to the space over dom(n)
//! space X = {a, b}
//! space Y = {c}
//! map f : c -> a
//! coeff Fp 2
//! element x = {a:1, b:0}@X u[id_X] + 1 u[f]
//! ```
//!
//! A partially defined system replaces the category and space lines:
//!
//! ```text
//! ambient = {0, 1, 2}
//! subset D = {0, 1}
//! pmap f : D -> D ; 0 -> 1, 1 -> 0
//! ```
//!
//! Identities and table entries involving identities are filled in. Formal
//! coefficients (`coeff formal`) take `symbol name @ object` lines instead of
//! spaces and maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use skewcat_core::{
    CategoryBuilder, Error, FinCategory, FinDynSys, FormalSystem, PartialSystem, ScalarKind,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; 0 when the problem is not tied to one line.
    pub line: usize,
    pub message: String,
    /// Every violation, when validation failed.
    pub details: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
        details: Vec::new(),
    }
}

fn core_err(line: usize) -> impl Fn(Error) -> ParseError {
    move |e| err(line, e.to_string())
}

/// The coefficient rings of a file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffSpec {
    Functions { kind: ScalarKind, constants_only: bool },
    Formal,
}

impl fmt::Display for CoeffSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSpec::Functions { kind, constants_only: false } => write!(f, "{kind}"),
            CoeffSpec::Functions { kind, constants_only: true } => write!(f, "{kind} constants"),
            CoeffSpec::Formal => f.write_str("formal"),
        }
    }
}

/// Parses `Q`, `Fp 5` (or `F5`), `Zmod 4` (or `Z/4`) and `formal`, with an
/// optional trailing `constants`.
pub fn parse_coeff(text: &str) -> Result<CoeffSpec, String> {
    let mut words: Vec<&str> = text.split_whitespace().collect();
    let constants_only = words.last() == Some(&"constants");
    if constants_only {
        words.pop();
    }
    let compact: String = words.concat();
    let modulus = |digits: &str| digits.parse::<u64>().map_err(|_| format!("bad modulus in `{text}`"));
    let kind = if compact == "formal" {
        if constants_only {
            return Err("formal coefficients have no constants-only variant".into());
        }
        return Ok(CoeffSpec::Formal);
    } else if compact == "Q" {
        ScalarKind::Rational
    } else if let Some(rest) = compact.strip_prefix("Fp").or_else(|| compact.strip_prefix('F')) {
        let p = modulus(rest)?;
        if !skewcat_core::coeff::is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        ScalarKind::Zmod(p)
    } else if let Some(rest) = compact.strip_prefix("Zmod").or_else(|| compact.strip_prefix("Z/")) {
        let m = modulus(rest)?;
        if m < 2 {
            return Err(format!("modulus {m} is below 2"));
        }
        ScalarKind::Zmod(m)
    } else {
        return Err(format!("unknown coefficients `{text}` (expected Q, Fp <p>, Zmod <m> or formal)"));
    };
    Ok(CoeffSpec::Functions { kind, constants_only })
}

/// Where the dynamics come from.
#[derive(Debug, Clone)]
pub enum Source {
    Category(FinDynSys),
    Partial {
        closed: PartialSystem,
        /// Maps added by closing the declared ones.
        added: usize,
        sys: FinDynSys,
    },
    /// Formal files need only the category.
    Bare(FinCategory),
}

#[derive(Debug, Clone)]
pub struct SystemFile {
    pub coeff: CoeffSpec,
    pub source: Source,
    pub formal: Option<FormalSystem>,
    /// `(name, literal, line)` in declaration order.
    pub elements: Vec<(String, String, usize)>,
}

impl SystemFile {
    pub fn category(&self) -> &FinCategory {
        match &self.source {
            Source::Category(sys) | Source::Partial { sys, .. } => sys.category(),
            Source::Bare(cat) => cat,
        }
    }

    pub fn system(&self) -> Option<&FinDynSys> {
        match &self.source {
            Source::Category(sys) | Source::Partial { sys, .. } => Some(sys),
            Source::Bare(_) => None,
        }
    }

    pub fn element(&self, name: &str) -> Option<&(String, String, usize)> {
        self.elements.iter().find(|(n, _, _)| n == name)
    }
}

/// `{a, b, c}` to its labels.
fn parse_set(text: &str, line: usize) -> Result<Vec<String>, ParseError> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| err(line, format!("expected `{{...}}`, found `{}`", text.trim())))?;
    Ok(inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect())
}

/// `x -> y, x' -> y'`.
fn parse_pairs(text: &str, line: usize) -> Result<Vec<(String, String)>, ParseError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once("->")
                .ok_or_else(|| err(line, format!("expected `point -> point`, found `{pair}`")))?;
            Ok((a.trim().to_string(), b.trim().to_string()))
        })
        .collect()
}

/// Splits `name : a -> b` into its three parts.
fn parse_arrow(text: &str, line: usize) -> Result<(String, String, String), ParseError> {
    let (name, rest) = text
        .split_once(':')
        .ok_or_else(|| err(line, "expected `name : source -> target`"))?;
    let (a, b) = rest
        .split_once("->")
        .ok_or_else(|| err(line, "expected `name : source -> target`"))?;
    let name = name.trim();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(err(line, format!("bad name `{name}`")));
    }
    Ok((name.to_string(), a.trim().to_string(), b.trim().to_string()))
}

fn single_word(text: &str, line: usize, what: &str) -> Result<String, ParseError> {
    let t = text.trim();
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(err(line, format!("expected a single {what}, found `{t}`")));
    }
    Ok(t.to_string())
}

#[derive(Default)]
struct Raw {
    builder: CategoryBuilder,
    has_category: bool,
    objects: Vec<String>,
    morphisms: Vec<String>,
    spaces: Vec<(String, Vec<String>, usize)>,
    maps: Vec<(String, Vec<(String, String)>, usize)>,
    coeff: Option<(CoeffSpec, usize)>,
    symbols: Vec<(String, String, usize)>,
    ambient: Option<(Vec<String>, usize)>,
    subsets: Vec<(String, Vec<String>, usize)>,
    pmaps: Vec<(String, String, String, Vec<(String, String)>, usize)>,
    elements: Vec<(String, String, usize)>,
}

/// Parses and validates a file. `coeff_override` replaces the file's
/// `coeff` line.
pub fn parse_system(text: &str, coeff_override: Option<CoeffSpec>) -> Result<SystemFile, ParseError> {
    let mut raw = Raw::default();
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "object" => {
                if rest.is_empty() {
                    return Err(err(line, "expected object names"));
                }
                for name in rest.split_whitespace() {
                    if raw.objects.iter().any(|o| o == name) {
                        return Err(err(line, format!("duplicate object `{name}`")));
                    }
                    raw.objects.push(name.to_string());
                    raw.builder.object(name);
                }
                raw.has_category = true;
            }
            "morphism" => {
                let (name, dom, cod) = parse_arrow(rest, line)?;
                for obj in [&dom, &cod] {
                    if !raw.objects.contains(obj) {
                        return Err(err(line, format!("unknown object `{obj}`")));
                    }
                }
                if raw.morphisms.contains(&name) {
                    return Err(err(line, format!("duplicate morphism `{name}`")));
                }
                raw.morphisms.push(name.clone());
                raw.builder.morphism(&name, &dom, &cod);
                raw.has_category = true;
            }
            "compose" => {
                let bad = || err(line, "expected `compose m . n = k`");
                let (lhs, k) = rest.split_once('=').ok_or_else(bad)?;
                let (m, n) = lhs.split_once('.').ok_or_else(bad)?;
                let (m, n) = (single_word(m, line, "morphism")?, single_word(n, line, "morphism")?);
                let k = single_word(k, line, "morphism")?;
                for name in [&m, &n, &k] {
                    let identity = name
                        .strip_prefix(skewcat_core::category::IDENTITY_PREFIX)
                        .is_some_and(|o| raw.objects.iter().any(|x| x == o));
                    if !identity && !raw.morphisms.contains(name) {
                        return Err(err(line, format!("unknown morphism `{name}`")));
                    }
                }
                raw.builder.compose(&m, &n, &k);
            }
            "space" => {
                let (obj, set) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line, "expected `space object = {...}`"))?;
                raw.spaces
                    .push((single_word(obj, line, "object")?, parse_set(set, line)?, line));
            }
            "map" => {
                let (name, pairs) = rest
                    .split_once(':')
                    .ok_or_else(|| err(line, "expected `map name : x -> y, ...`"))?;
                raw.maps
                    .push((single_word(name, line, "morphism")?, parse_pairs(pairs, line)?, line));
            }
            "coeff" => {
                if raw.coeff.is_some() {
                    return Err(err(line, "duplicate coeff declaration"));
                }
                raw.coeff = Some((parse_coeff(rest).map_err(|m| err(line, m))?, line));
            }
            "symbol" => {
                let (name, obj) = rest
                    .split_once('@')
                    .ok_or_else(|| err(line, "expected `symbol name @ object`"))?;
                raw.symbols.push((
                    single_word(name, line, "symbol")?,
                    single_word(obj, line, "object")?,
                    line,
                ));
            }
            "ambient" => {
                let set = rest
                    .strip_prefix('=')
                    .ok_or_else(|| err(line, "expected `ambient = {...}`"))?;
                if raw.ambient.is_some() {
                    return Err(err(line, "duplicate ambient declaration"));
                }
                raw.ambient = Some((parse_set(set, line)?, line));
            }
            "subset" => {
                let (name, set) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line, "expected `subset name = {...}`"))?;
                raw.subsets
                    .push((single_word(name, line, "subset name")?, parse_set(set, line)?, line));
            }
            "pmap" => {
                let (head, pairs) = rest
                    .split_once(';')
                    .ok_or_else(|| err(line, "expected `pmap name : dom -> cod ; x -> y, ...`"))?;
                let (name, dom, cod) = parse_arrow(head, line)?;
                raw.pmaps.push((name, dom, cod, parse_pairs(pairs, line)?, line));
            }
            "element" => {
                let (name, literal) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line, "expected `element name = literal`"))?;
                let name = single_word(name, line, "element name")?;
                if raw.elements.iter().any(|(n, _, _)| *n == name) {
                    return Err(err(line, format!("duplicate element `{name}`")));
                }
                raw.elements.push((name, literal.trim().to_string(), line));
            }
            other => return Err(err(line, format!("unknown declaration `{other}`"))),
        }
    }
    build(raw, coeff_override)
}

fn build(raw: Raw, coeff_override: Option<CoeffSpec>) -> Result<SystemFile, ParseError> {
    let coeff = match (coeff_override, &raw.coeff) {
        (Some(c), _) => c,
        (None, Some((c, _))) => *c,
        (None, None) => return Err(err(0, "no coeff declaration (add `coeff F2` or pass --coeff)")),
    };
    let partial = raw.ambient.is_some() || !raw.subsets.is_empty() || !raw.pmaps.is_empty();
    if partial && (raw.has_category || !raw.spaces.is_empty() || !raw.maps.is_empty()) {
        return Err(err(0, "a file declares either a category or a partial system, not both"));
    }
    if coeff == CoeffSpec::Formal && partial {
        return Err(err(0, "formal coefficients need an explicit category"));
    }
    if coeff != CoeffSpec::Formal {
        if let Some((_, _, line)) = raw.symbols.first() {
            return Err(err(*line, "symbols require `coeff formal`"));
        }
    }

    let source = if partial {
        build_partial(&raw)?
    } else {
        let cat = raw.builder.build().map_err(core_err(0))?;
        let report = cat.validate();
        if let Some(v) = report.violations.first() {
            let mut e = err(0, format!("invalid category: {v}"));
            e.details = report.violations.iter().map(ToString::to_string).collect();
            return Err(e);
        }
        if coeff == CoeffSpec::Formal {
            Source::Bare(cat)
        } else {
            let spaces: Vec<(&str, Vec<String>)> =
                raw.spaces.iter().map(|(o, s, _)| (o.as_str(), s.clone())).collect();
            // s(n) runs from the space over cod(n) to the space over dom(n)
            for (name, pairs, line) in &raw.maps {
                let Ok(n) = cat.morphism_index(name) else { continue };
                let space = |e: usize| raw.spaces.iter().find(|(o, _, _)| o == cat.object_name(e).as_str());
                for (e, label) in pairs.iter().flat_map(|(x, y)| [(cat.cod(n), x), (cat.dom(n), y)]) {
                    if let Some((o, points, _)) = space(e) {
                        if !points.contains(label) {
                            return Err(err(*line, format!("unknown point `{label}` in the space over `{o}`")));
                        }
                    }
                }
            }
            let maps: Vec<(&str, Vec<(String, String)>)> =
                raw.maps.iter().map(|(n, p, _)| (n.as_str(), p.clone())).collect();
            let sys = FinDynSys::from_labels(cat, &spaces, &maps).map_err(|e| {
                // point the error at the declaration it names where possible
                let message = e.to_string();
                let line = raw
                    .maps
                    .iter()
                    .map(|(n, _, l)| (n, l))
                    .chain(raw.spaces.iter().map(|(o, _, l)| (o, l)))
                    .find(|(n, _)| message.contains(&format!("`{n}`")) || message.contains(&format!("map {n} ")))
                    .map_or(0, |(_, &l)| l);
                err(line, message)
            })?;
            let report = sys.validate_action();
            if let Some(v) = report.violations.first() {
                let mut e = err(0, format!("invalid action: {v}"));
                e.details = report.violations.iter().map(ToString::to_string).collect();
                return Err(e);
            }
            Source::Category(sys)
        }
    };

    let formal = if coeff == CoeffSpec::Formal {
        let cat = match &source {
            Source::Bare(cat) => cat.clone(),
            _ => unreachable!("formal files keep the bare category"),
        };
        let mut sys = FormalSystem::new(cat).map_err(core_err(0))?;
        for (name, obj, line) in &raw.symbols {
            sys.declare(name, obj).map_err(core_err(*line))?;
        }
        Some(sys)
    } else {
        None
    };

    Ok(SystemFile {
        coeff,
        source,
        formal,
        elements: raw.elements,
    })
}

fn build_partial(raw: &Raw) -> Result<Source, ParseError> {
    let (ambient, ambient_line) = raw
        .ambient
        .clone()
        .ok_or_else(|| err(0, "partial systems need an `ambient = {...}` line"))?;
    let mut p = PartialSystem::new(ambient).map_err(core_err(ambient_line))?;
    let resolve = |p: &PartialSystem, labels: &[String], line: usize| -> Result<BTreeSet<usize>, ParseError> {
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        p.subset_indices(&refs).map_err(core_err(line))
    };
    for (name, labels, line) in &raw.subsets {
        let set = resolve(&p, labels, *line)?;
        p.name_subset(name, set).map_err(core_err(*line))?;
    }
    for (name, dom, cod, pairs, line) in &raw.pmaps {
        let side = |text: &str| -> Result<BTreeSet<usize>, ParseError> {
            if text.starts_with('{') {
                resolve(&p, &parse_set(text, *line)?, *line)
            } else {
                p.subset_by_name(text)
                    .cloned()
                    .ok_or_else(|| err(*line, format!("unknown subset `{text}`")))
            }
        };
        let (dom, cod) = (side(dom)?, side(cod)?);
        let mut graph = BTreeMap::new();
        for (a, b) in pairs {
            let (a, b) = (
                p.ambient_index(a).map_err(core_err(*line))?,
                p.ambient_index(b).map_err(core_err(*line))?,
            );
            if graph.insert(a, b).is_some_and(|old| old != b) {
                return Err(err(*line, format!("map {name} sends one point to two points")));
            }
        }
        p.add_map(name, dom, cod, graph).map_err(core_err(*line))?;
    }
    let declared = p.maps().len();
    let closed = p.close();
    let added = closed.maps().len() - declared;
    let sys = closed.to_category_system().map_err(core_err(0))?;
    Ok(Source::Partial { closed, added, sys })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SWAP: &str = "\
# Z/2 swapping two points
object pt
morphism g : pt -> pt
compose g . g = id_pt
space pt = {0, 1}
map g : 0 -> 1, 1 -> 0
coeff F2
element x = 1 u[id_pt] + 1 u[g]
";

    #[test]
    fn parses_a_group_action() {
        let file = parse_system(SWAP, None).unwrap();
        assert_eq!(file.coeff, CoeffSpec::Functions { kind: ScalarKind::Zmod(2), constants_only: false });
        let sys = file.system().unwrap();
        assert_eq!(sys.algebra_dimension(), 4);
        assert!(sys.category().is_groupoid().is_some());
        assert_eq!(file.element("x").unwrap().2, 8);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = SWAP.replace("map g : 0 -> 1, 1 -> 0", "map g : 0 -> 1, 1 => 0");
        let e = parse_system(&bad, None).unwrap_err();
        assert_eq!(e.line, 6);
        let bad = SWAP.replace("coeff F2", "coeff F4");
        assert_eq!(parse_system(&bad, None).unwrap_err().line, 7);
        let bad = SWAP.replace("object pt", "objekt pt");
        assert_eq!(parse_system(&bad, None).unwrap_err().to_string(), "line 2: unknown declaration `objekt`");
    }

    #[test]
    fn missing_table_entries_are_rejected() {
        let bad = SWAP.replace("compose g . g = id_pt\n", "");
        let e = parse_system(&bad, None).unwrap_err();
        assert!(e.message.starts_with("invalid category"), "{e}");
    }

    #[test]
    fn coefficient_specs() {
        assert_eq!(parse_coeff("Fp 5"), parse_coeff("F5"));
        assert_eq!(parse_coeff("Z/4"), Ok(CoeffSpec::Functions { kind: ScalarKind::Zmod(4), constants_only: false }));
        assert_eq!(
            parse_coeff("Q constants"),
            Ok(CoeffSpec::Functions { kind: ScalarKind::Rational, constants_only: true })
        );
        assert!(parse_coeff("F6").is_err());
        assert!(parse_coeff("R").is_err());
        for spec in ["Q", "Fp 3", "Zmod 4", "formal", "Q constants"] {
            assert_eq!(parse_coeff(spec).unwrap().to_string(), spec);
        }
    }

    #[test]
    fn partial_systems_are_closed() {
        let text = "\
ambient = {0, 1, 2}
subset D = {0, 1, 2}
pmap f : D -> D ; 0 -> 1, 1 -> 2, 2 -> 0
coeff Q
";
        let file = parse_system(text, None).unwrap();
        let Source::Partial { added, sys, .. } = &file.source else { panic!() };
        // identity and f∘f
        assert_eq!(*added, 2);
        assert!(sys.is_topologically_free().free);
        let mixed = format!("{text}object X\n");
        assert!(parse_system(&mixed, None).is_err());
    }

    #[test]
    fn coeff_override_wins() {
        let file = parse_system(SWAP, Some(CoeffSpec::Functions { kind: ScalarKind::Rational, constants_only: false })).unwrap();
        assert_eq!(file.coeff.to_string(), "Q");
        let no_coeff = SWAP.replace("coeff F2\n", "");
        assert!(parse_system(&no_coeff, None).is_err());
    }
}
