//! Plain-text problem files.
//!
//! ```text
//! # comments run to the end of the line
//! [field]
//! QQ                       # or GF(7), or GF(4, L^2+L+1)
//! [variables]
//! x y z
//! [ideal]
//! x^2 + y^2 + z^2 - 1      # one generator per line; a trailing `\` continues it
//! [action]
//! (1 2)(x z)               # one generator per line, 1-based indices or labels
//! ```
//!
//! A parametrization replaces `[variables]`/`[ideal]` with `[parameters]`
//! (a list of names) and `[coordinates]` (lines `label = expression`).

use std::collections::BTreeMap;
use std::path::Path;

use crate::decorations::Source;
use crate::error::{Error, Result};
use crate::field::{AnyField, ExtensionField, Field, FieldSpec, PrimeField, Rationals};
use crate::groebner::IdealPresentation;
use crate::matroid::{GroundSet, GroundSetAction};
use crate::monomial::MonomialOrder;
use crate::param::Parametrization;
use crate::parse::parse_polynomial;
use crate::poly::PolyRing;

/// What a problem presents: a prime ideal or a parametrization of its variety.
#[derive(Clone, Debug)]
pub enum Input<F: Field> {
    Ideal(IdealPresentation<F>),
    Param(Parametrization<F>),
}

impl<F: Field> Input<F> {
    pub fn labels(&self) -> &[String] {
        match self {
            Input::Ideal(i) => i.ring().vars(),
            Input::Param(p) => p.labels(),
        }
    }

    pub fn field(&self) -> &F {
        match self {
            Input::Ideal(i) => i.ring().field(),
            Input::Param(p) => p.param_ring().field(),
        }
    }

    pub fn source(&self) -> Source<'_, F> {
        match self {
            Input::Ideal(i) => Source::Ideal(i),
            Input::Param(p) => Source::Param(p),
        }
    }

    pub fn ground_set(&self) -> Result<GroundSet> {
        GroundSet::new(self.labels().to_vec())
    }
}

#[derive(Clone, Debug)]
pub struct Problem<F: Field> {
    pub input: Input<F>,
    pub action: Option<GroundSetAction>,
}

/// A problem over whichever field its file declares.
#[derive(Clone, Debug)]
pub enum AnyProblem {
    Rationals(Problem<Rationals>),
    Prime(Problem<PrimeField>),
    Extension(Problem<ExtensionField>),
}

/// Runs `$body` with `$p` bound to the typed [`Problem`] inside an
/// [`AnyProblem`].
#[macro_export]
macro_rules! with_problem {
    ($any:expr, $p:ident => $body:expr) => {
        match $any {
            $crate::problem::AnyProblem::Rationals($p) => $body,
            $crate::problem::AnyProblem::Prime($p) => $body,
            $crate::problem::AnyProblem::Extension($p) => $body,
        }
    };
}

impl AnyProblem {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let sections = split_sections(text)?;
        let field_lines = sections.get("field").ok_or_else(|| missing("field"))?;
        let [(line, spec)] = field_lines.as_slice() else {
            return Err(Error::Problem { line: first_line(field_lines), message: "expected one field line".into() });
        };
        let spec = parse_field_spec(spec).map_err(|e| at(*line, e))?;
        Ok(match AnyField::from_spec(&spec).map_err(|e| at(*line, e))? {
            AnyField::Rationals(f) => AnyProblem::Rationals(build(f, &sections)?),
            AnyField::Prime(f) => AnyProblem::Prime(build(f, &sections)?),
            AnyField::Extension(f) => AnyProblem::Extension(build(f, &sections)?),
        })
    }

    pub fn field_spec(&self) -> FieldSpec {
        with_problem!(self, p => p.input.field().spec())
    }

    pub fn labels(&self) -> &[String] {
        with_problem!(self, p => p.input.labels())
    }

    pub fn action(&self) -> Option<&GroundSetAction> {
        with_problem!(self, p => p.action.as_ref())
    }

    pub fn is_param(&self) -> bool {
        with_problem!(self, p => matches!(p.input, Input::Param(_)))
    }

    pub fn set_action(&mut self, action: Option<GroundSetAction>) {
        with_problem!(self, p => p.action = action)
    }
}

/// Parses action generators given outside a problem file, one cycle string
/// per generator.
pub fn parse_action_generators(labels: &[String], generators: &[impl AsRef<str>]) -> Result<GroundSetAction> {
    let lines: Lines = generators.iter().enumerate().map(|(k, g)| (k + 1, g.as_ref().to_string())).collect();
    parse_action(labels, &lines).map_err(|e| match e {
        Error::Problem { line, message } => Error::Invalid(format!("action generator {line}: {message}")),
        e => e,
    })
}

type Lines = Vec<(usize, String)>;

fn missing(section: &str) -> Error {
    Error::Problem { line: 0, message: format!("missing [{section}] section") }
}

fn first_line(lines: &Lines) -> usize {
    lines.first().map_or(0, |l| l.0)
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Problem { .. } => e,
        e => Error::Problem { line, message: e.to_string() },
    }
}

const SECTIONS: [&str; 6] = ["field", "variables", "ideal", "parameters", "coordinates", "action"];

/// Logical lines per section, with comments stripped and `\` continuations
/// joined. Line numbers are 1-based and point at the first physical line.
fn split_sections(text: &str) -> Result<BTreeMap<String, Lines>> {
    let mut out: BTreeMap<String, Lines> = BTreeMap::new();
    let mut current: Option<String> = None;
    let mut pending: Option<(usize, String)> = None;
    for (k, raw) in text.lines().enumerate() {
        let n = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if pending.is_none() {
            if let Some(name) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
                let name = name.trim().to_ascii_lowercase();
                if !SECTIONS.contains(&name.as_str()) {
                    return Err(Error::Problem { line: n, message: format!("unknown section [{name}]") });
                }
                if out.contains_key(&name) {
                    return Err(Error::Problem { line: n, message: format!("duplicate section [{name}]") });
                }
                out.insert(name.clone(), Vec::new());
                current = Some(name);
                continue;
            }
        }
        if body.is_empty() && pending.is_none() {
            continue;
        }
        let (start, mut acc) = pending.take().unwrap_or((n, String::new()));
        let (piece, cont) = match body.strip_suffix('\\') {
            Some(p) => (p, true),
            None => (body, false),
        };
        acc.push_str(piece);
        acc.push(' ');
        if cont {
            pending = Some((start, acc));
            continue;
        }
        let Some(sec) = &current else {
            return Err(Error::Problem { line: start, message: "content before the first section header".into() });
        };
        out.get_mut(sec).expect("section exists").push((start, acc.trim().to_string()));
    }
    if let Some((line, _)) = pending {
        return Err(Error::Problem { line, message: "continuation at end of file".into() });
    }
    Ok(out)
}

/// `QQ`, `GF(p)` or `GF(q, m)` where `m` is a monic irreducible polynomial
/// in a named generator.
pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("QQ") {
        return Ok(FieldSpec::Rationals);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidField(format!("expected QQ, GF(p) or GF(q, modulus), found `{t}`")))?;
    let (q, modulus) = match inner.split_once(',') {
        Some((q, m)) => (q.trim(), Some(m.trim())),
        None => (inner.trim(), None),
    };
    let q: u64 = q.parse().map_err(|_| Error::InvalidField(format!("bad field order `{q}`")))?;
    let p = (2..=q).find(|d| q % d == 0).ok_or_else(|| Error::InvalidField(format!("bad field order {q}")))?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    if r != 1 {
        return Err(Error::InvalidField(format!("{q} is not a prime power")));
    }
    let Some(modulus) = modulus else {
        if k != 1 {
            return Err(Error::InvalidField(format!("GF({q}) needs a defining polynomial, e.g. GF({q}, a^{k}+...)")));
        }
        return Ok(FieldSpec::PrimeField { p });
    };
    let names: Vec<&str> = modulus
        .split(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .filter(|s| s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_'))
        .collect();
    let generator = match names.as_slice() {
        [g, rest @ ..] if rest.iter().all(|r| r == g) => g.to_string(),
        _ => return Err(Error::InvalidField(format!("modulus `{modulus}` must use exactly one generator name"))),
    };
    let ring = PolyRing::new(PrimeField::new(p)?, [generator.as_str()], MonomialOrder::Lex)?;
    let m = parse_polynomial(modulus, &ring)?;
    let mut coeffs = vec![0u64; m.total_degree().unwrap_or(0) as usize + 1];
    for (mono, c) in m.terms() {
        coeffs[mono.exponent(0) as usize] = *c;
    }
    if coeffs.len() != k + 1 {
        return Err(Error::InvalidField(format!("GF({q}) needs a modulus of degree {k}, found `{modulus}`")));
    }
    // Validates irreducibility.
    ExtensionField::new(p, coeffs.clone(), &generator)?;
    Ok(FieldSpec::ExtensionField { p, modulus: coeffs, generator })
}

fn names(lines: &Lines) -> Vec<String> {
    lines.iter().flat_map(|(_, l)| l.split(|c: char| c.is_whitespace() || c == ',')).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn build<F: Field>(field: F, sections: &BTreeMap<String, Lines>) -> Result<Problem<F>> {
    let ideal_form = sections.contains_key("ideal") || sections.contains_key("variables");
    let param_form = sections.contains_key("parameters") || sections.contains_key("coordinates");
    let input = match (ideal_form, param_form) {
        (true, false) => {
            let vars_lines = sections.get("variables").ok_or_else(|| missing("variables"))?;
            let ring = PolyRing::new(field, names(vars_lines), MonomialOrder::Grevlex)
                .map_err(|e| at(first_line(vars_lines), e))?;
            let gens = sections.get("ideal").ok_or_else(|| missing("ideal"))?;
            let polys = gens
                .iter()
                .map(|(n, text)| parse_polynomial(text, &ring).map_err(|e| at(*n, e)))
                .collect::<Result<Vec<_>>>()?;
            Input::Ideal(IdealPresentation::new(ring, polys)?)
        }
        (false, true) => {
            let params = sections.get("parameters").ok_or_else(|| missing("parameters"))?;
            let ring = PolyRing::new(field, names(params), MonomialOrder::Grevlex)
                .map_err(|e| at(first_line(params), e))?;
            let coords = sections.get("coordinates").ok_or_else(|| missing("coordinates"))?;
            let mut entries = Vec::with_capacity(coords.len());
            for (n, line) in coords {
                let (label, expr) = line
                    .split_once('=')
                    .ok_or_else(|| Error::Problem { line: *n, message: "expected `label = expression`".into() })?;
                entries.push((label.trim().to_string(), expr.trim().to_string()));
            }
            let param = Parametrization::parse(ring, &entries).map_err(|e| at(first_line(coords), e))?;
            Input::Param(param)
        }
        (true, true) => {
            return Err(Error::Problem { line: 0, message: "give either an ideal or a parametrization, not both".into() })
        }
        (false, false) => return Err(Error::Problem { line: 0, message: "no [ideal] or [coordinates] section".into() }),
    };
    let labels = input.labels().to_vec();
    let action = match sections.get("action") {
        None => None,
        Some(lines) => Some(parse_action(&labels, lines)?),
    };
    Ok(Problem { input, action })
}

fn parse_action(labels: &[String], lines: &Lines) -> Result<GroundSetAction> {
    let n = labels.len();
    let mut gens = Vec::with_capacity(lines.len());
    for (line, text) in lines {
        let err = |message: String| Error::Problem { line: *line, message };
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| err(format!("expected `(` in `{text}`")))?;
            let close = inner.find(')').ok_or_else(|| err(format!("unclosed cycle in `{text}`")))?;
            let cycle = inner[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|tok| {
                    if let Some(i) = labels.iter().position(|l| l == tok) {
                        return Ok(i);
                    }
                    match tok.parse::<usize>() {
                        Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                        _ => Err(err(format!("`{tok}` is neither a label nor an index in 1..={n}"))),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = inner[close + 1..].trim_start();
        }
        gens.push(cycles);
    }
    GroundSetAction::from_cycles(n, &gens).map_err(|e| at(first_line(lines), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_ideal() {
        let p = AnyProblem::parse("# unit circle\n[field]\nQQ\n[variables]\nx y\n[ideal]\nx^2 + \\\n y^2 - 1\n").unwrap();
        assert_eq!(p.field_spec(), FieldSpec::Rationals);
        assert_eq!(p.labels(), ["x", "y"]);
        let AnyProblem::Rationals(Problem { input: Input::Ideal(i), .. }) = p else { panic!() };
        assert_eq!(i.generators().len(), 1);
        assert_eq!(i.generators()[0].to_string(), "x^2+y^2-1");
    }

    #[test]
    fn parametrization_with_action() {
        let text = "[field]\nQQ\n[parameters]\ns t\n[coordinates]\na = s\nb = t\nc = s*t\n[action]\n(a b)\n(1 2 3)\n";
        let p = AnyProblem::parse(text).unwrap();
        assert!(p.is_param());
        let act = p.action().unwrap();
        assert_eq!(act.generators(), &[vec![1, 0, 2], vec![1, 2, 0]]);
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("GF(7)").unwrap(), FieldSpec::PrimeField { p: 7 });
        assert_eq!(
            parse_field_spec("GF(4, L^2+L+1)").unwrap(),
            FieldSpec::ExtensionField { p: 2, modulus: vec![1, 1, 1], generator: "L".into() }
        );
        assert!(parse_field_spec("GF(4)").is_err());
        assert!(parse_field_spec("GF(6)").is_err());
        assert!(parse_field_spec("GF(4, L^2+1)").is_err());
        assert!(parse_field_spec("GF(8, L^2+L+1)").is_err());
        assert!(parse_field_spec("RR").is_err());
        for s in ["QQ", "GF(7)", "GF(4, L^2+L+1)", "GF(9, a^2+1)"] {
            let spec = parse_field_spec(s).unwrap();
            assert_eq!(parse_field_spec(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn extension_generator_in_ideal() {
        let p = AnyProblem::parse("[field]\nGF(4, L^2+L+1)\n[variables]\nx y\n[ideal]\nx + L*y\n").unwrap();
        assert!(matches!(p, AnyProblem::Extension(_)));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = AnyProblem::parse("[field]\nQQ\n[variables]\nx\n[ideal]\nx^2\nx + z\n").unwrap_err();
        assert!(matches!(e, Error::Problem { line: 7, .. }), "{e}");
        let e = AnyProblem::parse("[field]\nQQ\n[variables]\nx\n[ideal]\nx\n[action]\n(1 2)\n").unwrap_err();
        assert!(matches!(e, Error::Problem { line: 8, .. }), "{e}");
        assert!(AnyProblem::parse("[field]\nQQ\n[bogus]\n").is_err());
        assert!(AnyProblem::parse("x\n[field]\nQQ\n").is_err());
        assert!(AnyProblem::parse("[variables]\nx\n[ideal]\nx\n").is_err());
    }
}
