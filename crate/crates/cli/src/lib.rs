//! Command implementations behind the `algmatroid` binary. Each command
//! returns a JSON value plus a short human summary; the binary decides where
//! they go.

use std::fmt::Write as _;
use std::path::PathBuf;

use algmatroid::decorations::{decorate, DecorateOptions};
use algmatroid::engine::{build_oracle, compute_matroid, cross_check, CircuitMethod, EngineConfig, Wanted};
use algmatroid::field::Field;
use algmatroid::groebner::implicitize;
use algmatroid::jacobian::{jacobian_of_ideal, jacobian_of_param, nm_locus, NmContext};
use algmatroid::matroid::axioms::{verify_axioms, AxiomOptions};
use algmatroid::matroid::{subset, Matroid, MatroidJson};
use algmatroid::problem::{parse_action_generators, AnyProblem, Input, Problem};
use algmatroid::report::{CheckJson, NmLocusJson, Report, SCHEMA};
use algmatroid::{with_problem, Error, Result};
use serde::Serialize;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const BUDGET: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const VERIFICATION: i32 = 4;
    /// Anything else (internal or mathematical failures).
    pub const OTHER: i32 = 1;
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) | Error::RetryLimit(_) => exit::BUDGET,
        Error::Parse { .. }
        | Error::UnknownVariable(_)
        | Error::InvalidField(_)
        | Error::TooManyVariables(_)
        | Error::LengthMismatch { .. }
        | Error::UnitIdeal
        | Error::Characteristic(..)
        | Error::Missing(_)
        | Error::Problem { .. }
        | Error::Invalid(_)
        | Error::Io(_) => exit::INPUT,
        Error::NotCircuit(_) => exit::VERIFICATION,
        _ => exit::OTHER,
    }
}

/// Which part of the decorated matroid to compute.
#[derive(Clone, Copy, Debug)]
pub struct DecorationSelection {
    pub bases: bool,
    pub circuits: bool,
    /// Drop polynomials and supports from the output.
    pub summary_only: bool,
}

impl Default for DecorationSelection {
    fn default() -> Self {
        DecorationSelection { bases: true, circuits: true, summary_only: false }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub engine: EngineConfig,
    /// Replaces the problem file's action when non-empty.
    pub action: Vec<String>,
    pub no_action: bool,
    pub decorations: DecorationSelection,
}

#[derive(Clone, Debug)]
pub enum Command {
    /// Rank of a set of labels.
    Rank { labels: Vec<String>, all: bool },
    Bases,
    Circuits,
    Decorate,
    NmLocus,
    /// Axioms, duality and optionally engine agreement. With `matroid`, the
    /// given matroid is verified instead of a computed one.
    Check { matroid: Option<PathBuf>, cross_engine: usize, exchange: bool },
    Implicitize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Some items ran out of budget; partial output was still produced.
    Budget,
    /// A verification failed.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => exit::OK,
            Status::Budget => exit::BUDGET,
            Status::Failed => exit::VERIFICATION,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Output {
    pub json: serde_json::Value,
    pub summary: String,
    pub status: Status,
}

impl Output {
    fn ok(value: impl Serialize, summary: String) -> Result<Self> {
        Ok(Output { json: to_json(value)?, summary, status: Status::Ok })
    }

    /// JSON text with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

fn to_json(value: impl Serialize) -> Result<serde_json::Value> {
    serde_json::to_value(value).map_err(|e| Error::Invalid(format!("serialization: {e}")))
}

#[derive(Serialize)]
struct RankJson {
    schema: &'static str,
    field: String,
    engine: algmatroid::Engine,
    certified: bool,
    seed: u64,
    ground: Vec<String>,
    subset: Vec<usize>,
    rank: usize,
}

#[derive(Serialize)]
struct ImplicitJson {
    schema: &'static str,
    field: String,
    ground: Vec<String>,
    /// Reduced grevlex Gröbner basis of the implicit ideal.
    generators: Vec<String>,
}

#[derive(Serialize)]
struct CheckOnly {
    schema: &'static str,
    #[serde(flatten)]
    matroid: MatroidJson,
    check: CheckJson,
}

/// Loads a problem and applies the action overrides.
pub fn load(path: &std::path::Path, cfg: &RunConfig) -> Result<AnyProblem> {
    let mut p = AnyProblem::read(path)?;
    if cfg.no_action {
        p.set_action(None);
    } else if !cfg.action.is_empty() {
        let a = parse_action_generators(p.labels(), &cfg.action)?;
        p.set_action(Some(a));
    }
    Ok(p)
}

pub fn run(problem: Option<&AnyProblem>, cmd: &Command, cfg: &RunConfig) -> Result<Output> {
    if let Command::Check { matroid: Some(path), .. } = cmd {
        return check_file(path, cfg);
    }
    let problem = problem.ok_or_else(|| Error::Missing("a problem file is required".into()))?;
    let spec = problem.field_spec();
    with_problem!(problem, p => run_typed(p, &spec, cmd, cfg))
}

fn run_typed<F: Field>(p: &Problem<F>, spec: &algmatroid::FieldSpec, cmd: &Command, cfg: &RunConfig) -> Result<Output> {
    let is_param = matches!(p.input, Input::Param(_));
    let seed = cfg.engine.seed();
    let labels = p.input.labels();
    let group = match (&p.action, cfg.engine.use_action) {
        (Some(a), true) => Some(a.elements()?),
        _ => None,
    };
    match cmd {
        Command::Rank { labels: names, all } => {
            let ground = p.input.ground_set()?;
            let names: Vec<&str> = names.iter().flat_map(|s| s.split([' ', ','])).filter(|s| !s.is_empty()).collect();
            let s = if *all { ground.full() } else { ground.subset_of(&names)? };
            let built = build_oracle(&p.input, &cfg.engine)?;
            let rank = built.oracle.rank(s)?;
            let summary = format!("rank{{{}}} = {rank}\n", ground.names(s).join(", "));
            Output::ok(
                RankJson {
                    schema: SCHEMA,
                    field: spec.to_string(),
                    engine: built.engine,
                    certified: built.certified,
                    seed,
                    ground: labels.to_vec(),
                    subset: subset::to_indices(s),
                    rank,
                },
                summary,
            )
        }
        Command::Bases | Command::Circuits => {
            let wanted = if matches!(cmd, Command::Bases) { Wanted::BASES } else { Wanted::CIRCUITS };
            let c = compute_matroid(p, &cfg.engine, wanted)?;
            let mut r = Report::from_computed(spec, is_param, seed, &c);
            if let Some(g) = &group {
                r = r.with_orbits(&c.matroid, g)?;
            }
            let summary = summarize(&r);
            Output::ok(r, summary)
        }
        Command::Decorate => {
            let sel = cfg.decorations;
            let wanted = Wanted { bases: sel.bases, circuits: sel.circuits };
            let c = compute_matroid(p, &cfg.engine, wanted)?;
            let mut opts = DecorateOptions { circuits: sel.circuits, bases: sel.bases, budget: cfg.engine.budget, ..Default::default() };
            opts.base_degree.seed = seed;
            opts.base_degree.budget = cfg.engine.budget;
            opts.base_degree.retries = opts.base_degree.retries.max(cfg.engine.sample.retries.min(64));
            let d = decorate(p.input.source(), &c.matroid, group.as_ref(), &opts)?;
            let mut r = Report::from_computed(spec, is_param, seed, &c);
            if let Some(g) = &group {
                r = r.with_orbits(&c.matroid, g)?;
            }
            r = r.with_decorations(&d, p.input.field(), sel.summary_only);
            let budget_hit = d
                .circuits
                .iter()
                .filter_map(|i| i.result.as_ref().err())
                .chain(d.bases.iter().filter_map(|i| i.result.as_ref().err()))
                .any(|e| exit_code(e) == exit::BUDGET);
            let mut summary = summarize(&r);
            if d.errors() > 0 {
                let _ = writeln!(summary, "undecorated items: {}", d.errors());
            }
            for n in &d.notes {
                let _ = writeln!(summary, "note: {n}");
            }
            let mut out = Output::ok(r, summary)?;
            if budget_hit {
                out.status = Status::Budget;
            }
            Ok(out)
        }
        Command::NmLocus => {
            let field = p.input.field();
            if field.characteristic() != 0 {
                return Err(Error::Characteristic(
                    field.characteristic(),
                    "the NM-locus describes Jacobian specializations in characteristic 0".into(),
                ));
            }
            let c = compute_matroid(p, &cfg.engine, Wanted::BASES)?;
            let bases = c.matroid.bases()?;
            let nm = match &p.input {
                Input::Ideal(i) => nm_locus(&jacobian_of_ideal(i)?, NmContext::Ideal(i), bases, cfg.engine.budget)?,
                Input::Param(ph) => nm_locus(&jacobian_of_param(ph)?, NmContext::Param(ph), bases, cfg.engine.budget)?,
            };
            let json = NmLocusJson::new(&nm);
            let mut r = Report::from_computed(spec, is_param, seed, &c);
            let mut summary = summarize(&r);
            match &json {
                NmLocusJson::Principal { generator, empty } => {
                    let _ = writeln!(summary, "NM-locus: V({generator}){}", if *empty { " (empty)" } else { "" });
                }
                NmLocusJson::Components { components, empty } => {
                    let _ = writeln!(
                        summary,
                        "NM-locus: union of {} components{}",
                        components.len(),
                        if *empty { " (empty)" } else { "" }
                    );
                }
            }
            r.nm_locus = Some(json);
            Output::ok(r, summary)
        }
        Command::Check { cross_engine, exchange, .. } => {
            let c = compute_matroid(p, &cfg.engine, Wanted::ALL)?;
            let m = &c.matroid;
            let axioms = verify_axioms(m, &AxiomOptions { seed, ..Default::default() });
            let cross = if *cross_engine > 0 { Some(cross_check(&p.input, &cfg.engine, *cross_engine)?) } else { None };
            let naive_matches_exchange = if *exchange {
                let ex = EngineConfig { circuit_method: CircuitMethod::Exchange, ..cfg.engine.clone() };
                let e = compute_matroid(p, &ex, Wanted::CIRCUITS)?;
                Some(e.matroid.circuits()? == m.circuits()?)
            } else {
                None
            };
            let duality = duality_involution(m)?;
            let passed = axioms.passed()
                && cross.as_ref().is_none_or(|c| c.agrees())
                && naive_matches_exchange.unwrap_or(true)
                && duality;
            let check = CheckJson { passed, axioms, cross_engine: cross, naive_matches_exchange, duality_involution: Some(duality) };
            let mut r = Report::from_computed(spec, is_param, seed, &c);
            let mut summary = summarize(&r);
            summary.push_str(&summarize_check(&check));
            r.check = Some(check);
            let mut out = Output::ok(r, summary)?;
            if !passed {
                out.status = Status::Failed;
            }
            Ok(out)
        }
        Command::Implicitize => {
            let Input::Param(ph) = &p.input else {
                return Err(Error::Invalid("implicitize needs a parametrization".into()));
            };
            let ideal = implicitize(ph, cfg.engine.budget)?;
            let generators: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
            let mut summary = String::new();
            if generators.is_empty() {
                summary.push_str("implicit ideal: zero\n");
            }
            for g in &generators {
                let _ = writeln!(summary, "{g}");
            }
            Output::ok(ImplicitJson { schema: SCHEMA, field: spec.to_string(), ground: labels.to_vec(), generators }, summary)
        }
    }
}

fn duality_involution(m: &Matroid) -> Result<bool> {
    Ok(m.dualize()?.dualize()?.bases()? == m.bases()?)
}

fn check_file(path: &std::path::Path, cfg: &RunConfig) -> Result<Output> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let j: MatroidJson = serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    let m = Matroid::from_json(&j)?;
    let axioms = verify_axioms(&m, &AxiomOptions { seed: cfg.engine.seed(), ..Default::default() });
    let duality = if m.bases.is_some() { Some(duality_involution(&m)?) } else { None };
    let passed = axioms.passed() && duality.unwrap_or(true);
    let check = CheckJson { passed, axioms, cross_engine: None, naive_matches_exchange: None, duality_involution: duality };
    let summary = summarize_check(&check);
    let mut out = Output::ok(CheckOnly { schema: SCHEMA, matroid: m.to_json(), check }, summary)?;
    if !passed {
        out.status = Status::Failed;
    }
    Ok(out)
}

/// A few lines for a terminal.
pub fn summarize(r: &Report) -> String {
    let mut s = String::new();
    let engine = r.engine.map(|e| e.to_string()).unwrap_or_default();
    let _ = writeln!(s, "{} over {} ({engine}), {} elements, rank {}", r.input, r.field, r.matroid.ground.len(), r.matroid.rank);
    if r.certified == Some(false) {
        s.push_str("warning: uncertified linear ranks in positive characteristic; this is not the algebraic matroid\n");
    }
    if let Some(b) = &r.matroid.bases {
        let _ = writeln!(s, "bases: {}", b.len());
    }
    if let Some(c) = &r.matroid.circuits {
        let _ = writeln!(s, "circuits: {}", c.len());
    }
    let table = |s: &mut String, title: &str, rows: Vec<(String, usize)>| {
        if rows.is_empty() {
            return;
        }
        let _ = writeln!(s, "{title}");
        for (k, v) in rows {
            let _ = writeln!(s, "  {k:>6}  {v}");
        }
    };
    let h = &r.histograms;
    table(&mut s, "circuit sizes:", h.circuit_sizes.iter().map(|(k, v)| (k.to_string(), *v)).collect());
    table(&mut s, "circuit degrees:", h.circuit_degrees.iter().map(|(k, v)| (k.to_string(), *v)).collect());
    table(&mut s, "base degrees:", h.base_degrees.iter().map(|(k, v)| (k.to_string(), *v)).collect());
    if let Some(o) = &r.orbits {
        let _ = writeln!(s, "group order {}", o.group_order);
        if let Some(b) = &o.bases {
            let _ = writeln!(s, "base classes: {}", b.len());
        }
        if let Some(c) = &o.circuits {
            let _ = writeln!(s, "circuit classes: {}", c.len());
        }
        for (size, orbits) in &o.circuit_profile {
            let _ = writeln!(s, "  size {size}: orbit sizes {orbits:?}");
        }
    }
    s
}

fn summarize_check(c: &CheckJson) -> String {
    let mut s = String::new();
    for a in &c.axioms.checks {
        let mode = if a.exhaustive { "exhaustive" } else { "sampled" };
        let _ = write!(s, "{:<26} {} ({mode}, {} checked)", a.name, if a.passed { "ok" } else { "FAILED" }, a.checked);
        if let Some(w) = &a.witness {
            let _ = write!(s, ": {w}");
        }
        s.push('\n');
    }
    if let Some(x) = &c.cross_engine {
        match &x.mismatch {
            None => {
                let _ = writeln!(s, "symbolic and linear ranks agree on {} subsets", x.subsets);
            }
            Some((set, a, b)) => {
                let _ = writeln!(s, "engines disagree on {set:?}: symbolic {a}, linear {b}");
            }
        }
    }
    if let Some(e) = c.naive_matches_exchange {
        let _ = writeln!(s, "naive and exchange circuits {}", if e { "agree" } else { "DIFFER" });
    }
    if let Some(d) = c.duality_involution {
        let _ = writeln!(s, "duality involution {}", if d { "ok" } else { "FAILED" });
    }
    let _ = writeln!(s, "{}", if c.passed { "PASS" } else { "FAIL" });
    s
}
