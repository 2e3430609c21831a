//! Element literals: sums of `coefficient u[morphism]` terms.
//!
//! Function coefficients are `{point:value, ...}` (missing points are zero),
//! optionally followed by `@object`, or a bare scalar for a constant
//! function. Formal coefficients are polynomials in parentheses, e.g.
//! `(2 f_X (g_Y∘sqr)^2 - 1/2)`. A term may be negated with a leading `-`;
//! terms are joined with `+`. The literal `0` is the zero element. The
//! display format of the algebra parses back to the same element.

use skewcat_core::coeff::{parse_rational, FormalElem, RingElement};
use skewcat_core::{FnAlgebra, FormalSystem, SkewAlgebra, SkewElem};

use num_rational::BigRational;

/// Splits at `sep` outside brackets of any kind.
fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Splits a term into its coefficient text, morphism name and sign.
fn split_term(term: &str) -> Result<(String, String, bool), String> {
    let mut t = term.trim();
    let head = t
        .strip_suffix(']')
        .and_then(|s| s.rfind("u[").map(|i| (s, i)))
        .ok_or_else(|| format!("term `{t}` must end in u[morphism]"))?;
    let (body, at) = head;
    let morphism = body[at + 2..].trim().to_string();
    t = body[..at].trim();
    let mut negate = false;
    // a leading minus before a bracketed coefficient (or nothing) negates the term
    if let Some(rest) = t.strip_prefix('-') {
        let rest = rest.trim_start();
        if rest.is_empty() || rest.starts_with('{') || rest.starts_with('(') {
            negate = true;
            t = rest;
        }
    }
    Ok((t.to_string(), morphism, negate))
}

fn terms(text: &str) -> Result<Vec<&str>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty element".into());
    }
    if text == "0" {
        return Ok(Vec::new());
    }
    let parts = split_top(text, '+');
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(format!("empty term in `{text}`"));
    }
    Ok(parts)
}

/// Parses an element of a function-ring algebra.
pub fn parse_fn_element(alg: &FnAlgebra, text: &str) -> Result<SkewElem<skewcat_core::FnRingElem>, String> {
    let spec = alg.system();
    let sys = spec.system();
    let cat = alg.category();
    let kind = spec.scalar();
    let scalar = |s: &str| {
        let r = parse_rational(s.trim()).ok_or_else(|| format!("bad scalar `{}`", s.trim()))?;
        kind.from_rational(&r)
            .ok_or_else(|| format!("`{}` is not defined in {kind}", s.trim()))
    };
    let mut out = alg.zero();
    for term in terms(text)? {
        let (coeff, morphism, negate) = split_term(term)?;
        let n = cat.morphism_index(&morphism).map_err(|e| e.to_string())?;
        let e = cat.cod(n);
        let (body, object) = match coeff.rsplit_once('@') {
            Some((b, o)) if !o.contains('}') => (b.trim(), Some(o.trim())),
            _ => (coeff.as_str(), None),
        };
        if let Some(o) = object {
            if cat.object_index(o).map_err(|e| e.to_string())? != e {
                return Err(format!(
                    "coefficient of u[{morphism}] must live over {}, not {o}",
                    cat.object_name(e)
                ));
            }
        }
        let a = if body.starts_with('{') {
            let inner = body
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .ok_or_else(|| format!("unbalanced braces in `{body}`"))?;
            let mut values = vec![kind.zero(); sys.space(e).len()];
            for entry in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (point, value) = entry
                    .rsplit_once(':')
                    .ok_or_else(|| format!("expected `point:value`, found `{entry}`"))?;
                let x = sys.point_index(e, point.trim()).map_err(|e| e.to_string())?;
                values[x] = scalar(value)?;
            }
            spec.from_values(e, values).map_err(|e| e.to_string())?
        } else if body.is_empty() {
            spec.one(e)
        } else {
            spec.constant(e, scalar(body)?)
        };
        let a = if negate { a.neg() } else { a };
        let t = alg.term(a, n).map_err(|e| e.to_string())?;
        out = alg.add(&out, &t).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

/// Parses a formal polynomial over `object`.
fn parse_formal_poly(sys: &FormalSystem, object: usize, text: &str) -> Result<FormalElem, String> {
    let cat = sys.category();
    let mut out = FormalElem::zero(object);
    let text = text.trim();
    if text == "0" {
        return Ok(out);
    }
    // binary minus is written with surrounding spaces
    let normalized = text.replace(" - ", " + -");
    for mono in split_top(&normalized, '+') {
        let mut mono = mono.trim();
        if mono.is_empty() {
            return Err(format!("empty monomial in `{text}`"));
        }
        let mut value = FormalElem::one(object);
        if let Some(rest) = mono.strip_prefix('-') {
            value = value.neg();
            mono = rest.trim_start();
        }
        for factor in mono.split_whitespace() {
            if let Some(c) = parse_rational(factor) {
                value = value.scale(&c);
                continue;
            }
            let (base, power) = match factor.rsplit_once('^') {
                Some((b, p)) if p.chars().all(|c| c.is_ascii_digit()) && !p.is_empty() => {
                    (b, p.parse::<u32>().map_err(|_| format!("bad exponent in `{factor}`"))?)
                }
                _ => (factor, 1),
            };
            let base = base
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .unwrap_or(base);
            let (symbol, via) = match base.split_once('∘') {
                Some((s, m)) => (s, Some(m)),
                None => (base, None),
            };
            let b = sys.symbol_index(symbol).map_err(|_| format!("unknown symbol `{symbol}`"))?;
            let via = match via {
                Some(m) => cat.morphism_index(m).map_err(|e| e.to_string())?,
                None => cat.identity(sys.home(b)),
            };
            let g = sys.generator(b, via).map_err(|e| e.to_string())?;
            if g.object != object {
                return Err(format!(
                    "`{factor}` lives over {}, expected {}",
                    cat.object_name(g.object),
                    cat.object_name(object)
                ));
            }
            for _ in 0..power {
                value = value.try_mul(&g).map_err(|e| e.to_string())?;
            }
        }
        out = out.try_add(&value).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

/// Parses an element with formal coefficients.
pub fn parse_formal_element(
    alg: &SkewAlgebra<FormalSystem>,
    text: &str,
) -> Result<SkewElem<FormalElem>, String> {
    let sys = alg.system();
    let cat = alg.category();
    let mut out = alg.zero();
    for term in terms(text)? {
        let (coeff, morphism, negate) = split_term(term)?;
        let n = cat.morphism_index(&morphism).map_err(|e| e.to_string())?;
        let e = cat.cod(n);
        let body = coeff.trim();
        let a = if body.is_empty() {
            FormalElem::one(e)
        } else if encloses(body) {
            parse_formal_poly(sys, e, &body[1..body.len() - 1])?
        } else if let Some(c) = parse_rational(body) {
            FormalElem::constant(e, c)
        } else {
            parse_formal_poly(sys, e, body)?
        };
        let a = if negate {
            a.scale(&-BigRational::from_integer(1.into()))
        } else {
            a
        };
        let t = alg.term(a, n).map_err(|e| e.to_string())?;
        out = alg.add(&out, &t).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

/// Whether `text` is one parenthesized group.
fn encloses(text: &str) -> bool {
    if !text.starts_with('(') {
        return false;
    }
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i + 1 == text.len();
                }
            }
            _ => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use skewcat_core::instances::{example19_discrete, example19_formal, EXAMPLE19_FACTORS};
    use skewcat_core::{FunctionRingSpec, ScalarKind};

    fn example19(kind: ScalarKind) -> FnAlgebra {
        SkewAlgebra::new(FunctionRingSpec::new(example19_discrete(), kind).unwrap())
    }

    #[test]
    fn function_literals() {
        let alg = example19(ScalarKind::Rational);
        let x = parse_fn_element(&alg, "{-1:1, 1:2/3}@X u[abs] + -{0:1} u[sqrt] + 5 u[id_Y]").unwrap();
        assert_eq!(x.support().count(), 3);
        assert_eq!(alg.display(&x), "{0:5, 1:5}@Y u[id_Y] + {0:-1, 1:0}@Y u[sqrt] + {-1:1, 0:0, 1:2/3}@X u[abs]");
        assert!(parse_fn_element(&alg, "0").unwrap().is_zero());
        assert!(parse_fn_element(&alg, "{0:1}@Y u[abs]").is_err());
        assert!(parse_fn_element(&alg, "{7:1} u[abs]").is_err());
        assert!(parse_fn_element(&alg, "1 u[nope]").is_err());
        assert!(parse_fn_element(&alg, "1 u[abs] +").is_err());
    }

    #[test]
    fn function_display_round_trips() {
        for kind in [ScalarKind::Rational, ScalarKind::Zmod(3)] {
            let alg = example19(kind);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..50 {
                let x = alg.random_element(&mut rng, 0.5);
                assert_eq!(parse_fn_element(&alg, &alg.display(&x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn formal_literals_round_trip() {
        let alg = SkewAlgebra::new(example19_formal());
        let sys = alg.system();
        let cat = alg.category();
        let mut b1 = alg.zero();
        for (m, s) in EXAMPLE19_FACTORS[0] {
            let t = alg.term(sys.symbol(s).unwrap(), cat.morphism_index(m).unwrap()).unwrap();
            b1 = alg.add(&b1, &t).unwrap();
        }
        let mut b2 = alg.zero();
        for (m, s) in EXAMPLE19_FACTORS[1] {
            let t = alg.term(sys.symbol(s).unwrap(), cat.morphism_index(m).unwrap()).unwrap();
            b2 = alg.add(&b2, &t).unwrap();
        }
        let product = alg.mul(&b1, &b2).unwrap();
        for x in [&b1, &b2, &product] {
            assert_eq!(&parse_formal_element(&alg, &alg.display(x)).unwrap(), x);
        }
        let y = parse_formal_element(&alg, "(2 f_X (g_Y∘sqr)^2 - 1/2) u[abs] + -(f_Y) u[id_Y]").unwrap();
        assert_eq!(alg.display(&y), "(-f_Y) u[id_Y] + (-1/2 + 2 f_X (g_Y∘sqr)^2) u[abs]");
        assert_eq!(parse_formal_element(&alg, &alg.display(&y)).unwrap(), y);
        assert!(parse_formal_element(&alg, "(f_Y) u[abs]").is_err());
    }
}
