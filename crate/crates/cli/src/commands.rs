//! Subcommand implementations. Every command renders into an [`Outcome`];
//! nothing here touches stdout directly, so tests can run commands in-process.

use std::fs;
use std::path::Path;

use ybe_core::construction::{analyze_cyclic, verify_build, ConstructionSearch};
use ybe_core::cycle_set::{CycleSetFilter, Enumeration};
use ybe_core::{
    BraidMap, ConsParams, CycleSet, ExtensionContext, FiniteBrace, FiniteRing, MultipermutationLevel,
    OpTable, QybeMap, Side, ValidationMode, ZVector,
};

use crate::format::{emit, parse, ConsSpec, Document, Kind};
use crate::{Cli, Command, EnumerateCommand, Filter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Line {
    /// `key: value` pairs printed on one line.
    Fields(Vec<(String, String)>),
    /// Verbatim text, e.g. an emitted document.
    Raw(String),
}

struct Report {
    lines: Vec<Line>,
    code: i32,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: Vec::new(),
            code: EXIT_OK,
        }
    }

    fn fields<K: Into<String>, V: Into<String>>(&mut self, pairs: impl IntoIterator<Item = (K, V)>) {
        self.lines.push(Line::Fields(
            pairs.into_iter().map(|(k, v)| (k.into(), v.into())).collect(),
        ));
    }

    fn field(&mut self, k: impl Into<String>, v: impl Into<String>) {
        self.fields([(k, v)]);
    }

    fn raw(&mut self, text: impl Into<String>) {
        self.lines.push(Line::Raw(text.into()));
    }

    fn fail(&mut self) {
        self.code = EXIT_CHECK_FAILED;
    }

    fn render(&self, human: bool) -> String {
        let mut out = String::new();
        if human {
            out.push_str(&format!("# ybe report, {}\n", chrono::Local::now().format("%Y-%m-%d %H:%M:%S %z")));
        }
        for line in &self.lines {
            match line {
                Line::Raw(text) => out.push_str(text),
                Line::Fields(pairs) if human => {
                    let prose: Vec<String> = pairs.iter().map(|(k, v)| format!("{k} is {v}")).collect();
                    let mut sentence = prose.join(", ");
                    if let Some(first) = sentence.get(..1) {
                        sentence = first.to_uppercase() + &sentence[1..];
                    }
                    out.push_str(&sentence);
                    out.push_str(".\n");
                }
                Line::Fields(pairs) => {
                    let joined: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                    out.push_str(&joined.join("; "));
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// A usage-level failure: unreadable input, parse error or unsupported kind.
struct UsageError(String);

type CmdResult = Result<Report, UsageError>;

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn ok_or_fail<E: std::fmt::Display>(r: &Result<(), E>) -> String {
    match r {
        Ok(()) => "OK".to_string(),
        Err(e) => format!("FAIL ({e})"),
    }
}

fn level_str(l: MultipermutationLevel) -> String {
    match l {
        MultipermutationLevel::Level(m) => m.to_string(),
        MultipermutationLevel::NotFully => "none".to_string(),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn load(path: &Path) -> Result<Document, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn write_doc(path: &Path, doc: &Document) -> Result<(), UsageError> {
    fs::write(path, emit(doc)).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

fn wrong_kind(cmd: &str, kind: Kind) -> UsageError {
    UsageError(format!("{cmd} does not accept {kind} documents"))
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Check { file, mode } => load(file).and_then(|d| check(&d, (*mode).into())),
        Command::Convert { to, file } => to
            .parse::<Kind>()
            .map_err(UsageError)
            .and_then(|target| load(file).and_then(|d| convert(&d, target))),
        Command::Retract { file } => load(file).and_then(|d| retract(&d)),
        Command::Dual { file } => load(file).and_then(|d| dual(&d)),
        Command::Sgp {
            file,
            seed,
            bound,
            trials,
            out,
        } => load(file).and_then(|d| sgp(&d, *seed, *bound, *trials, out.as_deref())),
        Command::Construct { file, mode, out } => {
            load(file).and_then(|d| construct(&d, (*mode).into(), out.as_deref()))
        }
        Command::Enumerate(EnumerateCommand::CycleSets(args)) => {
            enumerate_cycle_sets(args.n, args.filter, args.canonical, cli.threads)
        }
        Command::Enumerate(EnumerateCommand::Construct(args)) => {
            enumerate_construct(args.p, args.k, args.level, args.mode.into(), cli.threads)
        }
    };
    match result {
        Ok(report) => Outcome {
            stdout: report.render(cli.human),
            stderr: String::new(),
            code: report.code,
        },
        Err(UsageError(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
        },
    }
}

fn check(doc: &Document, mode: ValidationMode) -> CmdResult {
    let mut r = Report::new();
    match doc {
        Document::Bop(t) => match CycleSet::validate(t.clone()) {
            Ok(x) => r.fields([
                ("cycle set", "OK".to_string()),
                ("nondegenerate", yes_no(x.is_nondegenerate())),
                ("indecomposable", yes_no(x.is_indecomposable())),
                ("mpl", level_str(x.multipermutation_level().expect("valid"))),
            ]),
            Err(e) => {
                r.field("cycle set", format!("FAIL ({e})"));
                r.fail();
            }
        },
        Document::Sol { lambda, tau } => {
            let m = BraidMap::new(lambda.clone(), tau.clone()).expect("parsed with a common n");
            let braid = m.braid_violation();
            let nd = m.nondegeneracy();
            r.fields([
                ("braid", braid.map_or("OK".to_string(), |v| format!("FAIL ({v})"))),
                ("involutive", yes_no(m.check_involutive())),
                ("left nondegenerate", yes_no(nd.left)),
                ("right nondegenerate", yes_no(nd.right)),
            ]);
            if braid.is_some() {
                r.fail();
            }
        }
        Document::Qsol { a, b } => {
            let m = QybeMap::new(a.clone(), b.clone()).expect("parsed with a common n");
            let qybe = m.qybe_violation();
            let nd = m.nondegeneracy();
            r.fields([
                ("qybe", qybe.map_or("OK".to_string(), |v| format!("FAIL ({v})"))),
                ("unitary", yes_no(m.check_unitary())),
                ("left nondegenerate", yes_no(nd.left)),
                ("right nondegenerate", yes_no(nd.right)),
                ("cycle set", yes_no(m.to_cycle_set().is_ok())),
            ]);
            if qybe.is_some() {
                r.fail();
            }
        }
        Document::Brace { add, circle } => match validate_brace(add, circle) {
            Ok(b) => {
                let side = if b.is_two_sided() {
                    "two-sided".to_string()
                } else {
                    b.side().to_string()
                };
                r.fields([
                    ("brace", "OK".to_string()),
                    ("side", side),
                    ("socle", b.socle().len().to_string()),
                    ("socle series", join(&b.socle_series().iter().map(|s| s.len()).collect::<Vec<_>>())),
                ]);
            }
            Err(e) => {
                r.field("brace", format!("FAIL ({e})"));
                r.fail();
            }
        },
        Document::Ring { add, mul } => match FiniteRing::validate(add.clone(), mul.clone()) {
            Ok(ring) => {
                let index = ring.nilpotency_index().map_or("none".to_string(), |k| k.to_string());
                r.fields([
                    ("ring", "OK".to_string()),
                    ("nil", yes_no(ring.is_nil())),
                    ("nilpotency index", index),
                    ("jacobson radical", yes_no(ring.is_jacobson_radical())),
                ]);
            }
            Err(e) => {
                r.field("ring", format!("FAIL ({e})"));
                r.fail();
            }
        },
        Document::Cons(spec) => match params(spec) {
            Ok(p) => {
                let paper = p.validate(ValidationMode::Paper);
                let direct = p.validate(ValidationMode::Direct);
                r.fields([
                    ("params", "OK".to_string()),
                    ("paper", ok_or_fail(&paper)),
                    ("direct", ok_or_fail(&direct)),
                ]);
                let selected = match mode {
                    ValidationMode::Paper => paper,
                    ValidationMode::Direct => direct,
                };
                if selected.is_err() {
                    r.fail();
                }
            }
            Err(e) => {
                r.field("params", format!("FAIL ({e})"));
                r.fail();
            }
        },
    }
    Ok(r)
}

/// Tries the left law first, then the right law.
fn validate_brace(add: &OpTable, circle: &OpTable) -> Result<FiniteBrace, ybe_core::brace_ring::BraceError> {
    FiniteBrace::validate(add.clone(), circle.clone(), Side::Left)
        .or_else(|e| FiniteBrace::validate(add.clone(), circle.clone(), Side::Right).map_err(|_| e))
}

fn params(spec: &ConsSpec) -> Result<ConsParams, ybe_core::ConsError> {
    ConsParams::new(spec.p, spec.k, spec.level, spec.chain.clone(), spec.f.clone())
}

fn failed(what: &str, e: impl std::fmt::Display) -> Report {
    let mut r = Report::new();
    r.field(what, format!("FAIL ({e})"));
    r.fail();
    r
}

fn cycle_set_of(doc: &Document) -> Result<Result<CycleSet, Report>, UsageError> {
    match doc {
        Document::Bop(t) => Ok(CycleSet::validate(t.clone()).map_err(|e| failed("cycle set", e))),
        other => Err(wrong_kind("this command", other.kind())),
    }
}

fn sol_doc(m: &BraidMap) -> Document {
    Document::Sol {
        lambda: m.lambda_table().clone(),
        tau: m.tau_table().clone(),
    }
}

fn qsol_doc(m: &QybeMap) -> Document {
    Document::Qsol {
        a: m.a_table().clone(),
        b: m.b_table().clone(),
    }
}

/// Conversions follow the cycle set ↔ quantum ↔ braid correspondences:
/// `qsol → sol` is `R∘p`, `sol → qsol` is `r∘p`, and a brace goes to the braid
/// solution of its left form.
fn convert(doc: &Document, target: Kind) -> CmdResult {
    let mut r = Report::new();
    let unsupported = || UsageError(format!("cannot convert {} to {target}", doc.kind()));
    let out = match (doc, target) {
        (d, t) if d.kind() == t => d.clone(),
        (Document::Bop(t), Kind::Qsol | Kind::Sol) => match CycleSet::validate(t.clone()) {
            Ok(x) => {
                let q = QybeMap::from_cycle_set(&x);
                if target == Kind::Qsol {
                    qsol_doc(&q)
                } else {
                    sol_doc(&q.braid_solution())
                }
            }
            Err(e) => return Ok(failed("cycle set", e)),
        },
        (Document::Qsol { a, b }, Kind::Bop | Kind::Sol) => {
            let q = QybeMap::new(a.clone(), b.clone()).expect("parsed with a common n");
            if target == Kind::Sol {
                sol_doc(&q.braid_solution())
            } else {
                match q.to_cycle_set() {
                    Ok(x) => Document::Bop(x.table().clone()),
                    Err(e) => return Ok(failed("cycle set", e)),
                }
            }
        }
        (Document::Sol { lambda, tau }, Kind::Qsol | Kind::Bop) => {
            let q = BraidMap::new(lambda.clone(), tau.clone())
                .expect("parsed with a common n")
                .flip_right();
            if target == Kind::Qsol {
                qsol_doc(&q)
            } else {
                match q.to_cycle_set() {
                    Ok(x) => Document::Bop(x.table().clone()),
                    Err(e) => return Ok(failed("cycle set", e)),
                }
            }
        }
        (Document::Brace { add, circle }, Kind::Sol | Kind::Qsol | Kind::Bop) => {
            let b = match validate_brace(add, circle) {
                Ok(b) if b.side() == Side::Left => b,
                Ok(b) => b.opposite(),
                Err(e) => return Ok(failed("brace", e)),
            };
            let sol = b.solution().expect("left brace");
            let q = sol.flip_right();
            match target {
                Kind::Sol => sol_doc(&sol),
                Kind::Qsol => qsol_doc(&q),
                _ => Document::Bop(q.to_cycle_set().expect("brace solutions are cycle-set solutions").table().clone()),
            }
        }
        (Document::Ring { add, mul }, Kind::Brace) => {
            match FiniteRing::validate(add.clone(), mul.clone()).map_err(|e| e.to_string()).and_then(|ring| ring.to_brace().map_err(|e| e.to_string())) {
                Ok(b) => Document::Brace {
                    add: b.add_table().clone(),
                    circle: b.circle_table().clone(),
                },
                Err(e) => return Ok(failed("ring", e)),
            }
        }
        _ => return Err(unsupported()),
    };
    r.raw(emit(&out));
    Ok(r)
}

fn retract(doc: &Document) -> CmdResult {
    let x = match cycle_set_of(doc)? {
        Ok(x) => x,
        Err(report) => return Ok(report),
    };
    let mut r = Report::new();
    r.fields([("size", x.n().to_string())]);
    for (i, step) in x.retraction_tower().expect("valid").iter().enumerate() {
        r.fields([
            (format!("retraction {}", i + 1), step.retract.n().to_string()),
            ("projection".to_string(), join(&step.projection)),
        ]);
    }
    r.field("mpl", level_str(x.multipermutation_level().expect("valid")));
    Ok(r)
}

fn dual(doc: &Document) -> CmdResult {
    let mut r = Report::new();
    let out = match doc {
        Document::Bop(t) => match CycleSet::validate(t.clone()).map(|x| x.dual()) {
            Ok(Ok(d)) => Document::Bop(d.table().clone()),
            Ok(Err(e)) | Err(e) => return Ok(failed("cycle set", e)),
        },
        Document::Sol { lambda, tau } => {
            sol_doc(&BraidMap::new(lambda.clone(), tau.clone()).expect("common n").flip_both())
        }
        Document::Qsol { a, b } => {
            qsol_doc(&QybeMap::new(a.clone(), b.clone()).expect("common n").flip_both())
        }
        other => return Err(wrong_kind("dual", other.kind())),
    };
    r.raw(emit(&out));
    Ok(r)
}

fn sgp(doc: &Document, seed: u64, bound: i64, trials: usize, out: Option<&Path>) -> CmdResult {
    let x = match cycle_set_of(doc)? {
        Ok(x) => x,
        Err(report) => return Ok(report),
    };
    let ctx = match ExtensionContext::new(x) {
        Ok(c) => c,
        Err(e) => return Ok(failed("extension", e)),
    };
    let mut r = Report::new();
    let relations = ctx.generator_relation_violation::<num_bigint::BigInt>();
    r.field(
        "generator relations",
        relations.map_or("OK".to_string(), |(a, b)| format!("FAIL (at ({a}, {b}))")),
    );
    let sampled = ctx.check_right_brace_sampled::<num_bigint::BigInt>(bound, trials, seed);
    r.fields([
        (
            "sampled laws",
            match &sampled {
                Ok(()) => "OK".to_string(),
                Err(f) => format!("FAIL ({:?} at trial {}: a = {}, b = {}, c = {})", f.law, f.trial, f.a, f.b, f.c),
            },
        ),
        ("trials", trials.to_string()),
        ("seed", seed.to_string()),
        ("bound", bound.to_string()),
    ]);
    if relations.is_some() || sampled.is_err() {
        r.fail();
    }
    match ctx.retracted_extension::<num_bigint::BigInt>() {
        Ok(a) => {
            r.fields([
                ("A(X) order", a.brace.n().to_string()),
                ("G(X) order", ctx.group().order().to_string()),
            ]);
            let reps: Vec<String> = a.representatives.iter().map(ZVector::to_string).collect();
            r.field("representatives", reps.join(" "));
            if let Some(path) = out {
                write_doc(
                    path,
                    &Document::Brace {
                        add: a.brace.add_table().clone(),
                        circle: a.brace.circle_table().clone(),
                    },
                )?;
            }
        }
        Err(e) => {
            r.field("A(X)", format!("FAIL ({e})"));
            r.fail();
        }
    }
    Ok(r)
}

fn construct(doc: &Document, mode: ValidationMode, out: Option<&Path>) -> CmdResult {
    let Document::Cons(spec) = doc else {
        return Err(wrong_kind("construct", doc.kind()));
    };
    let params = match params(spec) {
        Ok(p) => p,
        Err(e) => return Ok(failed("params", e)),
    };
    let mut r = Report::new();
    let n = params.size();
    let psi: Vec<String> = (0..params.p().pow(params.chain()[1]))
        .map(|x| params.psi(1, x).expect("level at least 2").to_string())
        .collect();
    r.field("psi1", psi.join(" "));
    let validation = params.validate(mode);
    r.field(format!("validate ({mode})"), ok_or_fail(&validation));
    if validation.is_err() {
        r.fail();
        return Ok(r);
    }
    let x = match params.build() {
        Ok(x) => x,
        Err(e) => return Ok(failed("build", e)),
    };
    let report = verify_build(&x, &params);
    r.field("size", n.to_string());
    r.field("indecomposable", yes_no(report.indecomposable));
    r.fields([
        ("group order", report.group_order.to_string()),
        ("expected", report.expected_group_order.to_string()),
        ("generated by phi", yes_no(report.contains_phi)),
    ]);
    r.fields([
        ("tower", join(&report.tower_sizes)),
        ("expected", join(&report.expected_tower_sizes)),
    ]);
    r.fields([
        ("mpl", level_str(report.level)),
        ("expected", report.expected_level.to_string()),
    ]);
    if let Ok(a) = analyze_cyclic(&x) {
        r.fields([
            ("n_star", a.n_star.to_string()),
            ("exponents", join(&a.exponent_table)),
            ("congruences", yes_no(a.congruence_ok)),
        ]);
    }
    if !report.all_ok() {
        r.fail();
    }
    r.raw(emit(&Document::Bop(x.table().clone())));
    if let Some(path) = out {
        write_doc(path, &Document::Bop(x.table().clone()))?;
    }
    Ok(r)
}

fn enumerate_cycle_sets(n: usize, filter: Filter, canonical: bool, threads: usize) -> CmdResult {
    let filter = match filter {
        Filter::All => CycleSetFilter::All,
        Filter::Nondegenerate => CycleSetFilter::Nondegenerate,
        Filter::Indecomposable => CycleSetFilter::Indecomposable,
        Filter::Irretractable => CycleSetFilter::Irretractable,
    };
    let found = Enumeration::new(n)
        .filter(filter)
        .canonical_only(canonical)
        .threads(threads)
        .run()
        .map_err(|e| UsageError(e.to_string()))?;
    let mut r = Report::new();
    for x in &found {
        let rows: Vec<String> = x.table().rows().map(join).collect();
        r.raw(format!("{}\n", rows.join(" | ")));
    }
    r.raw(format!("{} results\n", found.len()));
    Ok(r)
}

fn enumerate_construct(p: u64, k: u32, level: usize, mode: ValidationMode, threads: usize) -> CmdResult {
    let found = ConstructionSearch::new(p, k, level, mode)
        .threads(threads)
        .run()
        .map_err(|e| UsageError(e.to_string()))?;
    let mut r = Report::new();
    for c in &found {
        let mut pairs = vec![("chain".to_string(), join(c.params.chain()))];
        for (i, f) in c.params.functions().iter().enumerate() {
            pairs.push((format!("f{}", i + 1), join(f)));
        }
        r.fields(pairs);
    }
    r.raw(format!("{} results\n", found.len()));
    Ok(r)
}
