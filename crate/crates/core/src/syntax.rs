//! Text syntax for terms and trees.
//!
//! ```text
//! term  := "W" | "w" | nat | "t" "(" term ")" | "[" [term ("," term)*] "]"
//! tree  := nat "*" "[" [tree ("," tree)*] "]"
//! dtree := nat "*" "[" [dtree ("," dtree)*] "]" | "{" tree "}"
//! ```
//!
//! `W` is `Ω`, `t(α)` is `ϑα`, a numeral `n` abbreviates a sum of `n` zeros
//! and `w` abbreviates `[1]`. `dtree` is the syntax for `T_N(T⁰_{N+1}(∅))`,
//! whose leaves carry trees in braces. Whitespace is ignored.

use std::fmt;

use serde::Serializer;
use thiserror::Error;

use crate::gaptree::{GapTree, PlainTree, TermMultiset};
use crate::notation::{OrdinalTerm, RawTerm, TermView};

/// Largest numeral accepted by the parser.
pub const MAX_NUMERAL: usize = 100_000;

/// Byte offsets into the parsed input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", self.describe())]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: Vec<&'static str>,
    pub found: Option<char>,
    pub note: Option<String>,
}

impl ParseError {
    fn describe(&self) -> String {
        let found = match self.found {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        let mut s = format!("at byte {}: expected ", self.span.start);
        s.push_str(&self.expected.join(" or "));
        s.push_str(&format!(", found {found}"));
        if let Some(n) = &self.note {
            s.push_str(&format!(" ({n})"));
        }
        s
    }

    /// The input with a caret line under the offending span.
    pub fn render(&self, input: &str) -> String {
        let width = (self.span.end.max(self.span.start + 1) - self.span.start).max(1);
        format!(
            "{input}\n{}{}\n{self}",
            " ".repeat(input[..self.span.start.min(input.len())].chars().count()),
            "^".repeat(width)
        )
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&mut self, expected: &[&'static str]) -> ParseError {
        let found = self.peek();
        ParseError {
            span: SourceSpan {
                start: self.pos,
                end: self.pos + found.map_or(0, char::len_utf8),
            },
            expected: expected.to_vec(),
            found,
            note: None,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, name: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error(&["end of input"])),
        }
    }

    fn nat(&mut self) -> Result<(usize, SourceSpan), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(self.error(&["number"]));
        }
        self.pos += digits;
        let span = SourceSpan {
            start,
            end: self.pos,
        };
        let value = self.src[start..self.pos]
            .parse::<usize>()
            .map_err(|_| ParseError {
                span,
                expected: vec!["number"],
                found: self.src[start..].chars().next(),
                note: Some("number too large".into()),
            })?;
        Ok((value, span))
    }

    // Comma-separated items up to `close`; the opening bracket is consumed.
    fn list<T>(
        &mut self,
        close: char,
        close_name: &'static str,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            if !self.eat(',') {
                return Err(self.error(&["','", close_name]));
            }
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        match self.peek() {
            Some('W') => {
                self.pos += 1;
                Ok(RawTerm::Omega)
            }
            Some('w') => {
                self.pos += 1;
                Ok(RawTerm::Sum(vec![RawTerm::numeral(1)]))
            }
            Some('t') => {
                self.pos += 1;
                self.expect('(', "'('")?;
                let inner = self.term()?;
                self.expect(')', "')'")?;
                Ok(RawTerm::Theta(Box::new(inner)))
            }
            Some('[') => {
                self.pos += 1;
                Ok(RawTerm::Sum(self.list(']', "']'", Self::term)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let (n, span) = self.nat()?;
                if n > MAX_NUMERAL {
                    return Err(ParseError {
                        span,
                        expected: vec!["number"],
                        found: Some(c),
                        note: Some(format!("numerals are limited to {MAX_NUMERAL}")),
                    });
                }
                Ok(RawTerm::numeral(n))
            }
            _ => Err(self.error(&["'W'", "'w'", "number", "'t('", "'['"])),
        }
    }

    fn tree<L: Ord>(
        &mut self,
        leaf: &mut dyn FnMut(&mut Self) -> Result<Option<L>, ParseError>,
    ) -> Result<GapTree<L>, ParseError> {
        if let Some(x) = leaf(self)? {
            return Ok(GapTree::Leaf(x));
        }
        let (label, span) = self.nat().map_err(|mut e| {
            e.expected = vec!["label"];
            e
        })?;
        let label = u32::try_from(label).map_err(|_| ParseError {
            span,
            expected: vec!["label"],
            found: None,
            note: Some("label too large".into()),
        })?;
        self.expect('*', "'*'")?;
        self.expect('[', "'['")?;
        let children = self.list(']', "']'", |p| p.tree(leaf))?;
        Ok(GapTree::node(label, children))
    }
}

fn no_leaves(_: &mut Parser<'_>) -> Result<Option<std::convert::Infallible>, ParseError> {
    Ok(None)
}

fn braced_leaf(p: &mut Parser<'_>) -> Result<Option<PlainTree>, ParseError> {
    if !p.eat('{') {
        return Ok(None);
    }
    let t = p.tree(&mut no_leaves)?;
    p.expect('}', "'}'")?;
    Ok(Some(t))
}

/// Parses a term without checking the sum side conditions.
pub fn parse_term(text: &str) -> Result<RawTerm, ParseError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses a tree of `T_N(∅)`. Labels are not checked against any `N`.
pub fn parse_tree(text: &str) -> Result<PlainTree, ParseError> {
    let mut p = Parser::new(text);
    let t = p.tree(&mut no_leaves)?;
    p.finish()?;
    Ok(t)
}

/// Parses a tree of `T_N(T⁰_{N+1}(∅))`, with leaves written `{tree}`.
pub fn parse_domain_tree(text: &str) -> Result<GapTree<PlainTree>, ParseError> {
    let mut p = Parser::new(text);
    let t = p.tree(&mut braced_leaf)?;
    p.finish()?;
    Ok(t)
}

/// Parses `[tree, …]` as a multiset of plain trees.
pub fn parse_multiset(text: &str) -> Result<TermMultiset<std::convert::Infallible>, ParseError> {
    let mut p = Parser::new(text);
    p.expect('[', "'['")?;
    let items = p.list(']', "']'", |p| p.tree(&mut no_leaves))?;
    p.finish()?;
    Ok(TermMultiset::new(items))
}

/// Parses `[dtree, …]` as a multiset over `T_N(T⁰_{N+1}(∅))`.
pub fn parse_domain_multiset(text: &str) -> Result<TermMultiset<PlainTree>, ParseError> {
    let mut p = Parser::new(text);
    p.expect('[', "'['")?;
    let items = p.list(']', "']'", |p| p.tree(&mut braced_leaf))?;
    p.finish()?;
    Ok(TermMultiset::new(items))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    /// Only `W`, `t(…)`, `0` and brackets.
    #[default]
    Canonical,
    /// Numerals and `w` where they apply.
    Sugar,
}

pub fn print_term(a: &OrdinalTerm, style: Style) -> String {
    let mut out = String::new();
    write_term(a, style, &mut out);
    out
}

fn write_term(a: &OrdinalTerm, style: Style, out: &mut String) {
    if style == Style::Sugar {
        if let Some(n) = a.as_numeral() {
            out.push_str(&n.to_string());
            return;
        }
        if *a == OrdinalTerm::small_omega() {
            out.push('w');
            return;
        }
    }
    match a.view() {
        TermView::Omega => out.push('W'),
        TermView::Theta(b) => {
            out.push_str("t(");
            write_term(b, style, out);
            out.push(')');
        }
        TermView::Sum([]) => out.push('0'),
        TermView::Sum(es) => {
            out.push('[');
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_term(e, style, out);
            }
            out.push(']');
        }
    }
}

impl fmt::Display for OrdinalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self, Style::Canonical))
    }
}

impl<L: fmt::Display> fmt::Display for GapTree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapTree::Leaf(x) => write!(f, "{{{x}}}"),
            GapTree::Node { label, children } => write!(f, "{label}*{children}"),
        }
    }
}

impl<L: fmt::Display> fmt::Display for TermMultiset<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

/// Canonical text of a tree; children appear in storage order.
pub fn print_tree<L: fmt::Display>(t: &GapTree<L>) -> String {
    t.to_string()
}

pub(crate) fn serialize_opt_term<S: Serializer>(
    t: &Option<OrdinalTerm>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match t {
        Some(t) => s.serialize_some(&t.to_string()),
        None => s.serialize_none(),
    }
}

pub(crate) fn serialize_trees<S: Serializer>(ts: &[PlainTree], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ts.iter().map(ToString::to_string))
}
