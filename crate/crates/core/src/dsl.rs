//! A small text format for ordered groupoids, fuzzy subsets and crisp subsets.
//!
//! ```text
//! # comments run to end of line
//! groupoid G {
//!   elements: a b
//!   order: a<=b
//!   mul: a*a=a, a*b=a, b*a=a, b*b=a
//! }
//! fuzzy f on G { a: 3/10, b: 7/10 }
//! set T on G { b }
//! ```
//!
//! The order section lists any relation; its reflexive-transitive closure is
//! taken. Every product must be given exactly once, and every fuzzy subset
//! must grade every element exactly once.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use thiserror::Error;

use crate::error::Error;
use crate::fuzzy::FuzzySubset;
use crate::grade::{Grade, GradeError};
use crate::structure::{Element, FiniteOrderedGroupoid, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax,
    UnknownName,
    Duplicate,
    Incomplete,
    GradeOutOfRange,
    Structural,
    /// The tables are complete but break an axiom; carries the element labels
    /// so the witness can be printed.
    Axioms {
        report: ValidationReport,
        labels: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct DslError {
    pub line: usize,
    pub column: usize,
    pub kind: DslErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedStructure {
    pub name: String,
    pub structure: Arc<FiniteOrderedGroupoid>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFuzzy {
    pub name: String,
    pub structure: String,
    pub subset: FuzzySubset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSet {
    pub name: String,
    pub structure: String,
    /// Ascending, without repeats.
    pub members: Vec<Element>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub structures: Vec<NamedStructure>,
    pub fuzzies: Vec<NamedFuzzy>,
    pub sets: Vec<NamedSet>,
}

impl Document {
    pub fn structure(&self, name: &str) -> Option<&NamedStructure> {
        self.structures.iter().find(|s| s.name == name)
    }

    pub fn fuzzy(&self, name: &str) -> Option<&NamedFuzzy> {
        self.fuzzies.iter().find(|f| f.name == name)
    }

    pub fn set(&self, name: &str) -> Option<&NamedSet> {
        self.sets.iter().find(|s| s.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    LBrace,
    RBrace,
    Colon,
    Comma,
    Leq,
    Star,
    Equals,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Leq => f.write_str("`<=`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
                continue;
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut w = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        w.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                Tok::Word(w)
            }
            '<' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    Tok::Leq
                } else {
                    return Err(DslError {
                        line: l0,
                        column: c0,
                        kind: DslErrorKind::Syntax,
                        message: "expected `<=`".into(),
                    });
                }
            }
            _ => {
                bump(&mut chars);
                match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ':' => Tok::Colon,
                    ',' => Tok::Comma,
                    '*' => Tok::Star,
                    '=' => Tok::Equals,
                    '/' => Tok::Slash,
                    other => {
                        return Err(DslError {
                            line: l0,
                            column: c0,
                            kind: DslErrorKind::Syntax,
                            message: format!("unexpected character `{other}`"),
                        })
                    }
                }
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    doc: Document,
}

type PResult<T> = Result<T, DslError>;

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, at: &Spanned, kind: DslErrorKind, message: impl Into<String>) -> DslError {
        DslError {
            line: at.line,
            column: at.column,
            kind,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok) -> PResult<Spanned> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.err_at(&t, DslErrorKind::Syntax, format!("expected {want}, found {}", t.tok)))
        }
    }

    fn word(&mut self, what: &str) -> PResult<(String, Spanned)> {
        let t = self.next();
        match &t.tok {
            Tok::Word(w) => Ok((w.clone(), t)),
            other => Err(self.err_at(&t, DslErrorKind::Syntax, format!("expected {what}, found {other}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Spanned> {
        let (w, t) = self.word(&format!("`{kw}`"))?;
        if w == kw {
            Ok(t)
        } else {
            Err(self.err_at(&t, DslErrorKind::Syntax, format!("expected `{kw}`, found `{w}`")))
        }
    }

    fn document(mut self) -> PResult<Document> {
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Eof => return Ok(self.doc),
                Tok::Word(w) if w == "groupoid" => self.groupoid()?,
                Tok::Word(w) if w == "fuzzy" => self.fuzzy()?,
                Tok::Word(w) if w == "set" => self.set()?,
                other => {
                    return Err(self.err_at(
                        &t,
                        DslErrorKind::Syntax,
                        format!("expected `groupoid`, `fuzzy` or `set`, found {other}"),
                    ))
                }
            }
        }
    }

    fn element(&mut self, labels: &[String]) -> PResult<usize> {
        let (w, t) = self.word("element name")?;
        labels.iter().position(|l| *l == w).ok_or_else(|| {
            self.err_at(&t, DslErrorKind::UnknownName, format!("unknown element `{w}`"))
        })
    }

    fn groupoid(&mut self) -> PResult<()> {
        self.keyword("groupoid")?;
        let (name, name_tok) = self.word("groupoid name")?;
        if self.doc.structure(&name).is_some() {
            return Err(self.err_at(&name_tok, DslErrorKind::Duplicate, format!("groupoid `{name}` defined twice")));
        }
        self.expect(Tok::LBrace)?;
        self.keyword("elements")?;
        self.expect(Tok::Colon)?;
        let mut labels: Vec<String> = Vec::new();
        while matches!(self.peek().tok, Tok::Word(_)) && *self.peek_at(1) != Tok::Colon {
            let (w, t) = self.word("element name")?;
            if labels.contains(&w) {
                return Err(self.err_at(&t, DslErrorKind::Duplicate, format!("element `{w}` listed twice")));
            }
            labels.push(w);
        }
        if labels.is_empty() {
            let t = self.peek().clone();
            return Err(self.err_at(&t, DslErrorKind::Syntax, "expected at least one element"));
        }
        self.keyword("order")?;
        self.expect(Tok::Colon)?;
        let mut pairs = Vec::new();
        if matches!(self.peek().tok, Tok::Word(_)) && *self.peek_at(1) == Tok::Leq {
            loop {
                let a = self.element(&labels)?;
                self.expect(Tok::Leq)?;
                let b = self.element(&labels)?;
                pairs.push((a, b));
                if self.peek().tok == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.keyword("mul")?;
        self.expect(Tok::Colon)?;
        let n = labels.len();
        let mut cells: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
        let mut any = false;
        while self.peek().tok != Tok::RBrace {
            let start = self.peek().clone();
            let x = self.element(&labels)?;
            self.expect(Tok::Star)?;
            let y = self.element(&labels)?;
            self.expect(Tok::Equals)?;
            let z = self.element(&labels)?;
            if cells[x][y].is_some() {
                return Err(self.err_at(
                    &start,
                    DslErrorKind::Duplicate,
                    format!("product {}*{} given twice", labels[x], labels[y]),
                ));
            }
            cells[x][y] = Some(z);
            any = true;
            if self.peek().tok == Tok::Comma {
                self.next();
            }
        }
        let close = self.expect(Tok::RBrace)?;
        if !any {
            return Err(self.err_at(&close, DslErrorKind::Syntax, "expected at least one product"));
        }
        let mut mul = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                mul[x][y] = cells[x][y].ok_or_else(|| {
                    self.err_at(
                        &close,
                        DslErrorKind::Incomplete,
                        format!("incomplete mul table: missing {}*{}", labels[x], labels[y]),
                    )
                })?;
            }
        }
        let structure = FiniteOrderedGroupoid::from_order_pairs(labels.clone(), mul, &pairs)
            .map_err(|e| match e {
                Error::Axioms(report) => {
                    let detail: Vec<String> = report.violations.iter().map(|v| v.describe(&labels)).collect();
                    self.err_at(
                        &name_tok,
                        DslErrorKind::Axioms { report, labels: labels.clone() },
                        format!("groupoid `{name}` violates its axioms: {}", detail.join("; ")),
                    )
                }
                other => self.err_at(&name_tok, DslErrorKind::Structural, other.to_string()),
            })?;
        self.doc.structures.push(NamedStructure {
            name,
            structure: Arc::new(structure),
        });
        Ok(())
    }

    fn owner(&mut self) -> PResult<(String, Arc<FiniteOrderedGroupoid>)> {
        self.keyword("on")?;
        let (name, t) = self.word("groupoid name")?;
        match self.doc.structure(&name) {
            Some(s) => Ok((name, s.structure.clone())),
            None => Err(self.err_at(&t, DslErrorKind::UnknownName, format!("unknown groupoid `{name}`"))),
        }
    }

    fn grade(&mut self) -> PResult<Grade> {
        let (num, t) = self.word("grade")?;
        let text = if self.peek().tok == Tok::Slash {
            self.next();
            let (den, _) = self.word("denominator")?;
            format!("{num}/{den}")
        } else {
            num
        };
        text.parse::<Grade>().map_err(|e| match e {
            GradeError::OutOfRange(_) => self.err_at(&t, DslErrorKind::GradeOutOfRange, "grade out of [0,1]"),
            other => self.err_at(&t, DslErrorKind::Syntax, other.to_string()),
        })
    }

    fn fuzzy(&mut self) -> PResult<()> {
        self.keyword("fuzzy")?;
        let (name, name_tok) = self.word("fuzzy subset name")?;
        if self.doc.fuzzy(&name).is_some() {
            return Err(self.err_at(&name_tok, DslErrorKind::Duplicate, format!("fuzzy subset `{name}` defined twice")));
        }
        let (owner, s) = self.owner()?;
        self.expect(Tok::LBrace)?;
        let mut grades: Vec<Option<Grade>> = vec![None; s.len()];
        loop {
            let t = self.peek().clone();
            let x = self.element(s.labels())?;
            self.expect(Tok::Colon)?;
            let g = self.grade()?;
            if grades[x].replace(g).is_some() {
                return Err(self.err_at(&t, DslErrorKind::Duplicate, format!("element `{}` graded twice", s.labels()[x])));
            }
            if self.peek().tok == Tok::Comma {
                self.next();
            }
            if self.peek().tok == Tok::RBrace {
                break;
            }
        }
        let close = self.expect(Tok::RBrace)?;
        let mut full = Vec::with_capacity(s.len());
        for (x, g) in grades.into_iter().enumerate() {
            full.push(g.ok_or_else(|| {
                self.err_at(
                    &close,
                    DslErrorKind::Incomplete,
                    format!("fuzzy subset `{name}` has no grade for `{}`", s.labels()[x]),
                )
            })?);
        }
        let subset = FuzzySubset::new(s, full).expect("one grade per element");
        self.doc.fuzzies.push(NamedFuzzy {
            name,
            structure: owner,
            subset,
        });
        Ok(())
    }

    fn set(&mut self) -> PResult<()> {
        self.keyword("set")?;
        let (name, name_tok) = self.word("set name")?;
        if self.doc.set(&name).is_some() {
            return Err(self.err_at(&name_tok, DslErrorKind::Duplicate, format!("set `{name}` defined twice")));
        }
        let (owner, s) = self.owner()?;
        self.expect(Tok::LBrace)?;
        let mut seen = HashSet::new();
        while self.peek().tok != Tok::RBrace {
            let t = self.peek().clone();
            let x = self.element(s.labels())?;
            if !seen.insert(x) {
                return Err(self.err_at(&t, DslErrorKind::Duplicate, format!("element `{}` listed twice", s.labels()[x])));
            }
        }
        self.expect(Tok::RBrace)?;
        let mut members: Vec<Element> = seen.into_iter().map(Element).collect();
        members.sort();
        self.doc.sets.push(NamedSet {
            name,
            structure: owner,
            members,
        });
        Ok(())
    }
}

/// Parses a document. Every groupoid in the result has passed validation.
pub fn parse(source: &str) -> Result<Document, DslError> {
    let toks = lex(source)?;
    Parser {
        toks,
        pos: 0,
        doc: Document::default(),
    }
    .document()
}

/// Canonical text form; [`parse`] reads it back to an equal [`Document`].
pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for ns in &doc.structures {
        let s = &ns.structure;
        let l = |e: Element| s.label(e);
        let _ = writeln!(out, "groupoid {} {{", ns.name);
        let _ = writeln!(out, "  elements: {}", s.labels().join(" "));
        let order: Vec<String> = s.covers().into_iter().map(|(a, b)| format!("{}<={}", l(a), l(b))).collect();
        if order.is_empty() {
            let _ = writeln!(out, "  order:");
        } else {
            let _ = writeln!(out, "  order: {}", order.join(", "));
        }
        let _ = writeln!(out, "  mul:");
        for x in s.elements() {
            let row: Vec<String> = s.elements().map(|y| format!("{}*{}={}", l(x), l(y), l(s.mul(x, y)))).collect();
            let _ = writeln!(out, "    {}", row.join(", "));
        }
        let _ = writeln!(out, "}}");
        out.push('\n');
    }
    for nf in &doc.fuzzies {
        let _ = writeln!(out, "fuzzy {} on {} {}", nf.name, nf.structure, nf.subset);
    }
    if !doc.fuzzies.is_empty() {
        out.push('\n');
    }
    for ns in &doc.sets {
        let s = &doc.structure(&ns.structure).expect("owner defined").structure;
        let members: Vec<&str> = ns.members.iter().map(|&e| s.label(e)).collect();
        if members.is_empty() {
            let _ = writeln!(out, "set {} on {} {{ }}", ns.name, ns.structure);
        } else {
            let _ = writeln!(out, "set {} on {} {{ {} }}", ns.name, ns.structure, members.join(" "));
        }
    }
    out
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = "groupoid G { elements: a b order: a<=b mul: a*a=a, a*b=a, b*a=a, b*b=a }";

    fn err(src: &str) -> DslError {
        parse(src).unwrap_err()
    }

    #[test]
    fn parses_constant_chain() {
        let doc = parse(CHAIN).unwrap();
        let s = &doc.structure("G").unwrap().structure;
        assert_eq!(s.len(), 2);
        assert!(s.leq(Element(0), Element(1)));
        assert_eq!(s.mul_rows(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn parses_fuzzy_subset() {
        let doc = parse(&format!("{CHAIN}\nfuzzy f on G {{ a: 3/10, b: 7/10 }}")).unwrap();
        let f = &doc.fuzzy("f").unwrap().subset;
        assert_eq!(f.grades(), &["3/10".parse().unwrap(), "7/10".parse::<Grade>().unwrap()]);
    }

    #[test]
    fn grade_out_of_range() {
        let e = err(&format!("{CHAIN}\nfuzzy f on G {{ a: 3/2 }}"));
        assert_eq!(e.kind, DslErrorKind::GradeOutOfRange);
        assert_eq!(e.message, "grade out of [0,1]");
        assert_eq!((e.line, e.column), (2, 19));
    }

    #[test]
    fn error_paths_carry_positions() {
        let e = err("groupoid G { elements: a b order: a<=c mul: a*a=a }");
        assert_eq!(e.kind, DslErrorKind::UnknownName);
        assert_eq!((e.line, e.column), (1, 38));

        let e = err("groupoid G { elements: a order: mul: a*a=a, a*a=a }");
        assert_eq!(e.kind, DslErrorKind::Duplicate);

        let e = err("groupoid G { elements: a b order: mul: a*a=a }");
        assert_eq!(e.kind, DslErrorKind::Incomplete);
        assert!(e.message.contains("a*b"));

        let e = err("groupoid G { elements: a b\n order: a<=b\n mul: a*a=a, a*b=b, b*a=a, b*b=a }");
        match &e.kind {
            DslErrorKind::Axioms { report, .. } => assert!(!report.ok()),
            other => panic!("expected axiom error, got {other:?}"),
        }
        assert!(e.message.contains("right-compatibility fails at (a, b, b)"), "{}", e.message);

        let e = err("groupoid G { elements: a b order: a<=b, b<=a mul: a*a=a, a*b=a, b*a=a, b*b=a }");
        assert!(matches!(e.kind, DslErrorKind::Axioms { .. }));
        assert!(e.message.contains("antisymmetry"));

        let e = err("fuzzy f on H { a: 1 }");
        assert_eq!(e.kind, DslErrorKind::UnknownName);

        let e = err(&format!("{CHAIN} fuzzy f on G {{ a: 1 }}"));
        assert_eq!(e.kind, DslErrorKind::Incomplete);

        let e = err("groupoid G { elements: a ; }");
        assert_eq!(e.kind, DslErrorKind::Syntax);

        let e = err(&format!("{CHAIN} {CHAIN}"));
        assert_eq!(e.kind, DslErrorKind::Duplicate);

        let e = err(&format!("{CHAIN} set T on G {{ a a }}"));
        assert_eq!(e.kind, DslErrorKind::Duplicate);
    }

    #[test]
    fn comments_and_layout() {
        let src = "# header\ngroupoid  G{elements:a b # trailing\norder:a<=b mul:a*a=a a*b=a\nb*a=a b*b=a}\nset T on G { }\n";
        let doc = parse(src).unwrap();
        assert_eq!(doc.set("T").unwrap().members, vec![]);
        assert_eq!(doc.structure("G").unwrap().structure.len(), 2);
    }

    #[test]
    fn print_round_trip() {
        let src = format!(
            "{CHAIN}\ngroupoid D {{ elements: x order: mul: x*x=x }}\n\
             fuzzy f on G {{ a: 3/10, b: 14/20 }}\nfuzzy z on D {{ x: 0 }}\nset T on G {{ b a }}\nset E on D {{ }}"
        );
        let doc = parse(&src).unwrap();
        let text = print(&doc);
        let again = parse(&text).unwrap();
        assert_eq!(doc, again);
        assert_eq!(print(&again), text);
        assert!(text.contains("b: 7/10"));
    }
}
