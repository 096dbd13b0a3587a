//! Line-oriented text format for bound quivers.
//!
//! ```text
//! # square with one zero relation
//! vertices 1 2 3 4
//! arrow a 2 1
//! arrow c 3 1
//! arrow b 4 2
//! arrow d 4 3
//! rel a*b
//! loops 2 2
//! field p 2
//! ```
//!
//! A path `a*b` applies `b` first. `loops V N` adds `N` loops at `V` through
//! [`loop_extend`], with loop nilpotency taken from the `nilpotency`
//! directive (default 2).

use std::collections::HashSet;
use std::fmt;

use fpdim_core::quiver::{loop_extend, Arrow};
use fpdim_core::{BoundQuiver, Path, Quiver, Relation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Fields the command line can dispatch on.
pub const PRIMES: [u32; 7] = [2, 3, 5, 7, 11, 13, 101];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldChoice {
    Prime(u32),
    Rationals,
}

impl FieldChoice {
    /// Accepts `2`, `p 2`, `F2`, `Q`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Rationals);
        }
        let digits = t.trim_start_matches(['p', 'F']).trim();
        let p: u32 = digits.parse().map_err(|_| format!("unknown field {s:?}"))?;
        if !PRIMES.contains(&p) {
            return Err(format!("unsupported prime {p}; choose one of {PRIMES:?} or Q"));
        }
        Ok(FieldChoice::Prime(p))
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Prime(p) => write!(f, "F{p}"),
            FieldChoice::Rationals => write!(f, "Q"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Integer combination of paths, each path listed as arrow names in written
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationDecl {
    pub terms: Vec<(i64, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<RelationDecl>,
    pub loops: Vec<(String, usize)>,
    pub field: Option<FieldChoice>,
    pub nilpotency: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Star,
    Plus,
    Minus,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

fn is_arrow_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(is_name_start) && chars.all(is_name_char)
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    /// Whitespace-separated words with their 1-based columns.
    fn words(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s + 1, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }

    fn tokens(&self, from: usize) -> Result<Vec<(usize, Tok)>, ParseError> {
        let chars: Vec<(usize, char)> = self.text.char_indices().filter(|(i, _)| *i >= from).collect();
        let mut out = Vec::new();
        let mut k = 0;
        while k < chars.len() {
            let (i, c) = chars[k];
            let col = i + 1;
            if c.is_whitespace() {
                k += 1;
            } else if c == '*' || c == '+' || c == '-' {
                let tok = match c {
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    _ => Tok::Minus,
                };
                out.push((col, tok));
                k += 1;
            } else if c.is_ascii_digit() {
                let mut end = k;
                while end < chars.len() && chars[end].1.is_ascii_digit() {
                    end += 1;
                }
                let stop = chars.get(end).map_or(self.text.len(), |x| x.0);
                let v = self.text[i..stop]
                    .parse()
                    .map_err(|_| self.err(col, "coefficient out of range"))?;
                out.push((col, Tok::Int(v)));
                k = end;
            } else if is_name_start(c) {
                let mut end = k;
                while end < chars.len() && is_name_char(chars[end].1) {
                    end += 1;
                }
                let stop = chars.get(end).map_or(self.text.len(), |x| x.0);
                out.push((col, Tok::Name(self.text[i..stop].to_string())));
                k = end;
            } else {
                return Err(self.err(col, format!("unexpected character {c:?}")));
            }
        }
        Ok(out)
    }
}

fn parse_count(line: &Line, col: usize, s: &str) -> Result<usize, ParseError> {
    s.parse().map_err(|_| line.err(col, format!("expected a non-negative integer, found {s:?}")))
}

/// Parses and validates a quiver file. Names are checked as they are used,
/// so vertices must be declared before the arrows touching them, and arrows
/// before the relations using them.
pub fn parse(text: &str) -> Result<QuiverFile, ParseError> {
    let mut file = QuiverFile::default();
    let mut vertex_set: HashSet<String> = HashSet::new();
    let mut arrow_index: Vec<(String, String, String)> = Vec::new();
    let mut looped: HashSet<String> = HashSet::new();

    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let line = Line {
            number: i + 1,
            text: body,
        };
        let words = line.words();
        let Some(&(dcol, directive)) = words.first() else {
            continue;
        };
        let args = &words[1..];
        let expect = |n: usize, usage: &str| -> Result<(), ParseError> {
            if args.len() != n {
                return Err(line.err(dcol, format!("usage: {usage}")));
            }
            Ok(())
        };
        match directive {
            "vertices" => {
                if args.is_empty() {
                    return Err(line.err(dcol, "usage: vertices NAME..."));
                }
                for &(col, v) in args {
                    if !vertex_set.insert(v.to_string()) {
                        return Err(line.err(col, format!("duplicate vertex {v}")));
                    }
                    file.vertices.push(v.to_string());
                }
            }
            "arrow" => {
                expect(3, "arrow NAME SOURCE TARGET")?;
                let (ncol, name) = args[0];
                if !is_arrow_name(name) {
                    return Err(line.err(ncol, format!("invalid arrow name {name:?}")));
                }
                if arrow_index.iter().any(|(n, _, _)| n == name) {
                    return Err(line.err(ncol, format!("duplicate arrow {name}")));
                }
                for &(col, v) in &args[1..] {
                    if !vertex_set.contains(v) {
                        return Err(line.err(col, format!("unknown vertex {v}")));
                    }
                }
                let decl = ArrowDecl {
                    name: name.to_string(),
                    source: args[1].1.to_string(),
                    target: args[2].1.to_string(),
                };
                arrow_index.push((decl.name.clone(), decl.source.clone(), decl.target.clone()));
                file.arrows.push(decl);
            }
            "rel" => {
                let from = body.find("rel").expect("directive present") + 3;
                file.relations.push(parse_relation(&line, dcol, &line.tokens(from)?, &arrow_index)?);
            }
            "loops" => {
                expect(2, "loops VERTEX COUNT")?;
                let (vcol, v) = args[0];
                if !vertex_set.contains(v) {
                    return Err(line.err(vcol, format!("unknown vertex {v}")));
                }
                if !looped.insert(v.to_string()) {
                    return Err(line.err(vcol, format!("loops at {v} declared twice")));
                }
                let n = parse_count(&line, args[1].0, args[1].1)?;
                file.loops.push((v.to_string(), n));
            }
            "field" => {
                let choice = match args {
                    [(_, "Q")] => FieldChoice::Rationals,
                    [(_, "p"), (col, p)] => {
                        FieldChoice::parse(p).map_err(|e| line.err(*col, e))?
                    }
                    _ => return Err(line.err(dcol, "usage: field p PRIME | field Q")),
                };
                file.field = Some(choice);
            }
            "nilpotency" => {
                expect(1, "nilpotency INTEGER")?;
                let n = parse_count(&line, args[0].0, args[0].1)?;
                if n < 2 {
                    return Err(line.err(args[0].0, "loop nilpotency must be at least 2"));
                }
                file.nilpotency = Some(n);
            }
            other => return Err(line.err(dcol, format!("unknown directive {other:?}"))),
        }
    }
    Ok(file)
}

fn parse_relation(
    line: &Line,
    dcol: usize,
    toks: &[(usize, Tok)],
    arrows: &[(String, String, String)],
) -> Result<RelationDecl, ParseError> {
    let mut terms = Vec::new();
    let mut k = 0;
    let mut endpoints: Option<(String, String)> = None;
    let end_col = line.text.trim_end().len() + 1;
    let col_at = |k: usize| toks.get(k).map_or(end_col, |t| t.0);
    while k < toks.len() || terms.is_empty() {
        let mut sign = 1i64;
        if terms.is_empty() {
            if toks.get(k).map(|t| &t.1) == Some(&Tok::Minus) {
                sign = -1;
                k += 1;
            }
        } else {
            match toks.get(k).map(|t| &t.1) {
                Some(Tok::Plus) => {}
                Some(Tok::Minus) => sign = -1,
                _ => return Err(line.err(col_at(k), "expected '+' or '-' between terms")),
            }
            k += 1;
        }
        let mut coeff = 1i64;
        if let Some(Tok::Int(c)) = toks.get(k).map(|t| &t.1) {
            coeff = *c;
            k += 1;
            if toks.get(k).map(|t| &t.1) != Some(&Tok::Star) {
                return Err(line.err(col_at(k), "expected '*' after a coefficient"));
            }
            k += 1;
        }
        let start_col = col_at(k);
        let mut names: Vec<(usize, String)> = Vec::new();
        loop {
            match toks.get(k) {
                Some((col, Tok::Name(n))) => {
                    names.push((*col, n.clone()));
                    k += 1;
                }
                _ => return Err(line.err(col_at(k), "expected an arrow name")),
            }
            if toks.get(k).map(|t| &t.1) == Some(&Tok::Star) {
                k += 1;
            } else {
                break;
            }
        }
        let mut ends: Vec<(&str, &str)> = Vec::new();
        for (col, n) in &names {
            let Some((_, s, t)) = arrows.iter().find(|(a, _, _)| a == n) else {
                return Err(line.err(*col, format!("unknown arrow {n}")));
            };
            ends.push((s, t));
        }
        for w in 0..names.len().saturating_sub(1) {
            // names[w] applies after names[w + 1]
            if ends[w + 1].1 != ends[w].0 {
                return Err(line.err(
                    names[w].0,
                    format!("{} cannot follow {}: paths are not composable", names[w].1, names[w + 1].1),
                ));
            }
        }
        if names.len() < 2 {
            return Err(line.err(
                start_col,
                "relation path of length 1; relations must lie in the square of the arrow ideal for admissibility",
            ));
        }
        let here = (ends[names.len() - 1].0.to_string(), ends[0].1.to_string());
        match &endpoints {
            None => endpoints = Some(here),
            Some(e) if *e != here => {
                return Err(line.err(start_col, "paths of a relation must be parallel"));
            }
            _ => {}
        }
        terms.push((sign * coeff, names.into_iter().map(|(_, n)| n).collect()));
    }
    if terms.iter().all(|(c, _)| *c == 0) {
        return Err(line.err(dcol, "all coefficients are zero"));
    }
    Ok(RelationDecl { terms })
}

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Core(#[from] fpdim_core::Error),
    #[error("vertex name {0:?} cannot be written in the text format")]
    Unprintable(String),
}

impl QuiverFile {
    /// The bound quiver declared by the file, with `loops` directives
    /// applied.
    pub fn bound_quiver(&self) -> Result<BoundQuiver, BuildError> {
        let vid = |name: &str| {
            self.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| fpdim_core::Error::InvalidQuiver(format!("unknown vertex {name}")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    name: a.name.clone(),
                    source: vid(&a.source)?,
                    target: vid(&a.target)?,
                })
            })
            .collect::<Result<Vec<_>, fpdim_core::Error>>()?;
        let q = Quiver::new(self.vertices.clone(), arrows)?;
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let terms = r
                    .terms
                    .iter()
                    .map(|(c, names)| {
                        let ids = names
                            .iter()
                            .map(|n| {
                                q.arrow_by_name(n)
                                    .ok_or_else(|| fpdim_core::Error::InvalidRelation(format!("unknown arrow {n}")))
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok((*c, Path::new(&q, ids)?))
                    })
                    .collect::<Result<Vec<_>, fpdim_core::Error>>()?;
                Relation::new(terms)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let base = BoundQuiver::new(q, relations)?;
        if self.loops.iter().all(|(_, n)| *n == 0) {
            return Ok(base);
        }
        let mut counts = vec![0; self.vertices.len()];
        for (v, n) in &self.loops {
            counts[vid(v)?] = *n;
        }
        Ok(loop_extend(&base, &counts, self.nilpotency.unwrap_or(2))?)
    }

    /// The file describing `bq` exactly: every arrow (loops included) and
    /// relation spelled out, no `loops` sugar.
    pub fn from_bound_quiver(bq: &BoundQuiver) -> Result<Self, BuildError> {
        let q = bq.quiver();
        for v in q.vertex_names() {
            if v.is_empty() || v.contains(|c: char| c.is_whitespace() || c == '#') {
                return Err(BuildError::Unprintable(v.clone()));
            }
        }
        let arrows = q
            .arrows()
            .iter()
            .map(|a| ArrowDecl {
                name: a.name.clone(),
                source: q.vertex_name(a.source).to_string(),
                target: q.vertex_name(a.target).to_string(),
            })
            .collect();
        let relations = bq
            .relations()
            .iter()
            .map(|r| RelationDecl {
                terms: r
                    .terms()
                    .iter()
                    .map(|(c, p)| (*c, p.arrows().iter().map(|&a| q.arrow(a).name.clone()).collect()))
                    .collect(),
            })
            .collect();
        Ok(QuiverFile {
            vertices: q.vertex_names().to_vec(),
            arrows,
            relations,
            ..QuiverFile::default()
        })
    }
}

/// Canonical text form; `parse(&print(f)) == Ok(f)` for every parsed file.
pub fn print(file: &QuiverFile) -> String {
    let mut out = String::new();
    if !file.vertices.is_empty() {
        out.push_str("vertices ");
        out.push_str(&file.vertices.join(" "));
        out.push('\n');
    }
    for a in &file.arrows {
        out.push_str(&format!("arrow {} {} {}\n", a.name, a.source, a.target));
    }
    for r in &file.relations {
        out.push_str("rel ");
        for (i, (c, names)) in r.terms.iter().enumerate() {
            let path = names.join("*");
            let (sep, mag) = match (i, *c) {
                (0, 1) => ("", None),
                (0, c) => ("", Some(c)),
                (_, c) if c < 0 => (" - ", Some(-c)),
                (_, c) => (" + ", Some(c)),
            };
            out.push_str(sep);
            match mag {
                Some(1) | None => out.push_str(&path),
                Some(m) => out.push_str(&format!("{m}*{path}")),
            }
        }
        out.push('\n');
    }
    for (v, n) in &file.loops {
        out.push_str(&format!("loops {v} {n}\n"));
    }
    match file.field {
        Some(FieldChoice::Prime(p)) => out.push_str(&format!("field p {p}\n")),
        Some(FieldChoice::Rationals) => out.push_str("field Q\n"),
        None => {}
    }
    if let Some(n) = file.nilpotency {
        out.push_str(&format!("nilpotency {n}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fpdim_core::quiver::builders::zero_relation_square;

    const SQUARE: &str = "\
# square with a zero relation
vertices 1 2 3 4
arrow a 2 1
arrow c 3 1
arrow b 4 2
arrow d 4 3
rel a*b   # kills one of the two paths
loops 2 2
";

    #[test]
    fn square_with_loops() {
        let f = parse(SQUARE).unwrap();
        let bq = f.bound_quiver().unwrap();
        let expected = loop_extend(&zero_relation_square().unwrap(), &[0, 2, 0, 0], 2).unwrap();
        assert_eq!(bq.quiver(), expected.quiver());
        assert_eq!(bq.relations(), expected.relations());
    }

    #[test]
    fn dual_numbers() {
        let bq = parse("vertices x\narrow a x x\nrel a*a\n").unwrap().bound_quiver().unwrap();
        assert_eq!(bq.loop_counts(), vec![1]);
        assert_eq!(bq.relations().len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("vertices 1 2\narrow a 2 1\nrel a").unwrap_err();
        assert_eq!((e.line, e.column), (3, 5));
        assert!(e.message.contains("admissibility"));

        let e = parse("vertices 1 2\narrow a 2 1\narrow a 1 2").unwrap_err();
        assert_eq!((e.line, e.column), (3, 7));
        assert!(e.message.contains("duplicate arrow"));

        let e = parse("vertices 1 2\narrow a 2 3").unwrap_err();
        assert_eq!((e.line, e.column), (2, 11));

        let e = parse("vertices 1 2 3\narrow a 2 1\narrow b 3 2\nrel b*a").unwrap_err();
        assert_eq!((e.line, e.column), (4, 5));
        assert!(e.message.contains("composable"));

        let e = parse("vertices 1 2\narrow a 2 1\nrel a*z").unwrap_err();
        assert_eq!((e.line, e.column), (3, 7));

        assert!(parse("field p 4").is_err());
        assert!(parse("colour red").is_err());
    }

    #[test]
    fn coefficients_and_signs() {
        let text = "vertices 1 2 3 4\narrow a 2 1\narrow b 4 2\narrow c 3 1\narrow d 4 3\nrel -2*a*b+3*c*d\n";
        let f = parse(text).unwrap();
        assert_eq!(f.relations[0].terms[0].0, -2);
        assert_eq!(f.relations[0].terms[1].0, 3);
        assert_eq!(parse(&print(&f)).unwrap(), f);
        assert!(parse("vertices 1 2 3 4\narrow a 2 1\narrow b 4 2\nrel 0*a*b").is_err());
    }
}
