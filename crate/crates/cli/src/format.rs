//! The `v1` text formats.
//!
//! ```text
//! <kind> v1
//! n <int>
//! <payload>
//! ```
//!
//! Kinds and payloads:
//!
//! - `bop`: `n` rows of the table `x·y`.
//! - `sol`: `LAMBDA` then `n` rows, `TAU` then `n` rows with `T[y][x] = τ_y(x)`.
//! - `qsol`: `A` then `n` rows with `A[x][y] = x^y`, `B` then `n` rows.
//! - `brace`: `ADD` then `n` rows, `CIRCLE` then `n` rows.
//! - `ring`: `ADD` then `n` rows, `MUL` then `n` rows.
//! - `cons`: `p`, `k`, `level`, `chain` and `f1` … `f(level−1)` lines. The `n`
//!   line is optional here and must equal `p^k` when present.
//!
//! Blank lines and lines starting with `#` are ignored. Tables hold 0-based
//! indices. For `brace` and `ring`, `0` must be the additive identity.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;
use ybe_core::OpTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Bop,
    Sol,
    Qsol,
    Brace,
    Ring,
    Cons,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::Bop, Kind::Sol, Kind::Qsol, Kind::Brace, Kind::Ring, Kind::Cons];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Bop => "bop",
            Kind::Sol => "sol",
            Kind::Qsol => "qsol",
            Kind::Brace => "brace",
            Kind::Ring => "ring",
            Kind::Cons => "cons",
        }
    }

    fn sections(self) -> &'static [&'static str] {
        match self {
            Kind::Bop => &[""],
            Kind::Sol => &["LAMBDA", "TAU"],
            Kind::Qsol => &["A", "B"],
            Kind::Brace => &["ADD", "CIRCLE"],
            Kind::Ring => &["ADD", "MUL"],
            Kind::Cons => &[],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    /// Accepts the header names and the aliases `cycle-set`, `braid` and `qybe`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bop" | "cycle-set" => Ok(Kind::Bop),
            "sol" | "braid" => Ok(Kind::Sol),
            "qsol" | "qybe" => Ok(Kind::Qsol),
            "brace" => Ok(Kind::Brace),
            "ring" => Ok(Kind::Ring),
            "cons" => Ok(Kind::Cons),
            other => Err(format!("unknown kind '{other}'")),
        }
    }
}

/// Raw construction parameters, checked later by `ConsParams::new`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsSpec {
    pub p: u64,
    pub k: u32,
    pub level: usize,
    pub chain: Vec<u32>,
    pub f: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Bop(OpTable),
    Sol { lambda: OpTable, tau: OpTable },
    Qsol { a: OpTable, b: OpTable },
    Brace { add: OpTable, circle: OpTable },
    Ring { add: OpTable, mul: OpTable },
    Cons(ConsSpec),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Bop(_) => Kind::Bop,
            Document::Sol { .. } => Kind::Sol,
            Document::Qsol { .. } => Kind::Qsol,
            Document::Brace { .. } => Kind::Brace,
            Document::Ring { .. } => Kind::Ring,
            Document::Cons(_) => Kind::Cons,
        }
    }

    fn tables(&self) -> Vec<&OpTable> {
        match self {
            Document::Bop(t) => vec![t],
            Document::Sol { lambda, tau } => vec![lambda, tau],
            Document::Qsol { a, b } => vec![a, b],
            Document::Brace { add, circle } => vec![add, circle],
            Document::Ring { add, mul } => vec![add, mul],
            Document::Cons(_) => vec![],
        }
    }
}

/// Canonical serialization: single spaces, one trailing newline per line.
pub fn emit(doc: &Document) -> String {
    let mut out = String::new();
    let kind = doc.kind();
    writeln!(out, "{kind} v1").unwrap();
    if let Document::Cons(c) = doc {
        writeln!(out, "p {}", c.p).unwrap();
        writeln!(out, "k {}", c.k).unwrap();
        writeln!(out, "level {}", c.level).unwrap();
        writeln!(out, "chain {}", join(&c.chain)).unwrap();
        for (i, f) in c.f.iter().enumerate() {
            writeln!(out, "f{} {}", i + 1, join(f)).unwrap();
        }
        return out;
    }
    let tables = doc.tables();
    writeln!(out, "n {}", tables[0].n()).unwrap();
    for (header, table) in kind.sections().iter().zip(tables) {
        if !header.is_empty() {
            writeln!(out, "{header}").unwrap();
        }
        for row in table.rows() {
            writeln!(out, "{}", join(row)).unwrap();
        }
    }
    out
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    /// Whitespace-separated tokens with their 1-based columns.
    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices().chain(std::iter::once((self.text.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((self.text[..s].chars().count() + 1, &self.text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        out
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = Line<'a>> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = Line<'a>>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, t)| Line { number: i + 1, text: t })
                .filter(|l| {
                    let t = l.text.trim_start();
                    !t.is_empty() && !t.starts_with('#')
                }),
        );
        Lines {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<Line<'a>, ParseError> {
        match self.inner.next() {
            Some(l) => {
                self.last = l.number;
                Ok(l)
            }
            None => Err(ParseError {
                line: self.last + 1,
                column: 1,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn peek_keyword(&mut self) -> Option<&str> {
        self.inner.peek().and_then(|l| l.text.split_whitespace().next())
    }

    fn finish(mut self) -> Result<(), ParseError> {
        match self.inner.next() {
            Some(l) => Err(l.err(1, "unexpected content after the document")),
            None => Ok(()),
        }
    }
}

fn number<T: FromStr>(line: &Line, (col, tok): (usize, &str)) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| line.err(col, format!("expected a non-negative integer, found '{tok}'")))
}

/// A line `<key> <value>`.
fn keyed<T: FromStr>(lines: &mut Lines, key: &str) -> Result<T, ParseError> {
    let values = keyed_list(lines, key)?;
    let (line, toks) = values;
    match toks.as_slice() {
        [single] => number(&line, *single),
        _ => Err(line.err(1, format!("'{key}' takes exactly one value"))),
    }
}

fn keyed_list<'a>(lines: &mut Lines<'a>, key: &str) -> Result<(Line<'a>, Vec<(usize, &'a str)>), ParseError> {
    let line = lines.next(&format!("'{key}'"))?;
    let toks = line.tokens();
    match toks.first() {
        Some((_, k)) if *k == key => {}
        Some((c, k)) => return Err(line.err(*c, format!("expected '{key}', found '{k}'"))),
        None => unreachable!("blank lines are skipped"),
    }
    let rest = toks[1..].to_vec();
    Ok((line, rest))
}

fn table(lines: &mut Lines, n: usize, name: &str) -> Result<OpTable, ParseError> {
    let mut cells = Vec::with_capacity(n * n);
    for r in 0..n {
        let line = lines.next(&format!("row {r} of {name}"))?;
        let toks = line.tokens();
        if toks.len() != n {
            return Err(line.err(
                1,
                format!("row {r} of {name} has {} entries, expected {n}", toks.len()),
            ));
        }
        for tok in toks {
            let v: usize = number(&line, tok)?;
            if v >= n {
                return Err(line.err(tok.0, format!("entry {v} in row {r} of {name} is not below {n}")));
            }
            cells.push(v);
        }
    }
    Ok(OpTable::new(n, cells).expect("cells checked"))
}

fn section(lines: &mut Lines, header: &str, n: usize) -> Result<OpTable, ParseError> {
    let line = lines.next(&format!("'{header}'"))?;
    if line.text.trim() != header {
        return Err(line.err(1, format!("expected section header '{header}'")));
    }
    table(lines, n, header)
}

fn check_additive_identity(add: &OpTable, header_line: usize) -> Result<(), ParseError> {
    let n = add.n();
    if let Some(y) = (0..n).find(|&y| add.get(0, y) != y || add.get(y, 0) != y) {
        return Err(ParseError {
            line: header_line,
            column: 1,
            message: format!("ADD: 0 is not the identity (fails at {y})"),
        });
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut lines = Lines::new(text);
    let header = lines.next("a '<kind> v1' header")?;
    let toks = header.tokens();
    let kind: Kind = match toks.first() {
        Some(&(c, k)) => k.parse().map_err(|e: String| header.err(c, e))?,
        None => unreachable!("blank lines are skipped"),
    };
    match toks.get(1) {
        Some((_, "v1")) if toks.len() == 2 => {}
        Some((c, v)) => return Err(header.err(*c, format!("unsupported version '{v}'"))),
        None => return Err(header.err(1, "missing version, expected 'v1'")),
    }
    if kind == Kind::Cons {
        return parse_cons(lines);
    }
    let n: usize = keyed(&mut lines, "n")?;
    let doc = match kind {
        Kind::Bop => Document::Bop(table(&mut lines, n, "the table")?),
        Kind::Sol => Document::Sol {
            lambda: section(&mut lines, "LAMBDA", n)?,
            tau: section(&mut lines, "TAU", n)?,
        },
        Kind::Qsol => Document::Qsol {
            a: section(&mut lines, "A", n)?,
            b: section(&mut lines, "B", n)?,
        },
        Kind::Brace | Kind::Ring => {
            let at = lines.inner.peek().map_or(lines.last + 1, |l| l.number);
            let add = section(&mut lines, "ADD", n)?;
            check_additive_identity(&add, at)?;
            if kind == Kind::Brace {
                Document::Brace {
                    add,
                    circle: section(&mut lines, "CIRCLE", n)?,
                }
            } else {
                Document::Ring {
                    add,
                    mul: section(&mut lines, "MUL", n)?,
                }
            }
        }
        Kind::Cons => unreachable!("handled above"),
    };
    lines.finish()?;
    Ok(doc)
}

fn parse_cons(mut lines: Lines) -> Result<Document, ParseError> {
    let declared = if lines.peek_keyword() == Some("n") {
        let line_no = lines.inner.peek().map(|l| l.number);
        Some((keyed::<u64>(&mut lines, "n")?, line_no.unwrap()))
    } else {
        None
    };
    let p: u64 = keyed(&mut lines, "p")?;
    let k: u32 = keyed(&mut lines, "k")?;
    if let Some((n, line)) = declared {
        if p.checked_pow(k) != Some(n) {
            return Err(ParseError {
                line,
                column: 1,
                message: format!("n {n} does not equal p^k"),
            });
        }
    }
    let level: usize = keyed(&mut lines, "level")?;
    let (line, toks) = keyed_list(&mut lines, "chain")?;
    let chain = toks
        .into_iter()
        .map(|t| number(&line, t))
        .collect::<Result<Vec<u32>, _>>()?;
    let mut f = Vec::new();
    for i in 1..level {
        let (line, toks) = keyed_list(&mut lines, &format!("f{i}"))?;
        f.push(
            toks.into_iter()
                .map(|t| number(&line, t))
                .collect::<Result<Vec<u64>, _>>()?,
        );
    }
    lines.finish()?;
    Ok(Document::Cons(ConsSpec { p, k, level, chain, f }))
}
