//! ASCII grammar:
//!
//! ```text
//! φ ::= Ex<i>. φ | Ax<i>. φ | (φ & φ & ...) | (φ | φ | ...) | (φ) | !φ
//!     | P(x<i>) | !P(x<i>) | x<i> = x<j> | x<i> != x<j>
//! ```
//!
//! Chains inside one pair of parentheses fold to the right. `!` is pushed
//! onto the atoms while parsing.

use std::fmt::{self, Write};

use super::{Formula, Var};
use crate::error::{Error, Result};
use crate::structures::Vocabulary;

pub(super) struct Printed<'a> {
    pub f: &'a Formula,
    pub vocab: &'a Vocabulary,
}

impl fmt::Display for Printed<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(out, self.f, &|p| self.vocab.name(p).to_owned())
    }
}

/// Canonical fully parenthesized text; `parse(print(f)) == f`.
pub fn print(f: &Formula, vocab: &Vocabulary) -> String {
    f.display(vocab).to_string()
}

pub(super) fn write_formula<W: Write>(out: &mut W, f: &Formula, name: &dyn Fn(usize) -> String) -> fmt::Result {
    match f {
        Formula::Eq(x, y) => write!(out, "x{x} = x{y}"),
        Formula::Neq(x, y) => write!(out, "x{x} != x{y}"),
        Formula::Pred(p, x) => write!(out, "{}(x{x})", name(*p)),
        Formula::NegPred(p, x) => write!(out, "!{}(x{x})", name(*p)),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let op = if matches!(f, Formula::And(..)) { '&' } else { '|' };
            out.write_char('(')?;
            write_formula(out, a, name)?;
            write!(out, " {op} ")?;
            write_formula(out, b, name)?;
            out.write_char(')')
        }
        Formula::Exists(v, b) => {
            write!(out, "Ex{v}. ")?;
            write_formula(out, b, name)
        }
        Formula::Forall(v, b) => {
            write!(out, "Ax{v}. ")?;
            write_formula(out, b, name)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Amp,
    Bar,
    Bang,
    Equals,
    NotEquals,
    Dot,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };
    while let Some(c) = chars.next() {
        let here = pos;
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
            continue;
        }
        pos.column += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '.' => Tok::Dot,
            '=' => Tok::Equals,
            '!' if chars.peek() == Some(&'=') => {
                chars.next();
                pos.column += 1;
                Tok::NotEquals
            }
            '!' => Tok::Bang,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::from(c);
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    pos.column += 1;
                }
                Tok::Ident(s)
            }
            other => return Err(syntax(here, format!("unexpected character {other:?}"))),
        };
        toks.push((tok, here));
    }
    Ok(toks)
}

/// Parses the grammar above, resolving predicate names against `vocab`.
pub fn parse(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let toks = lex(text)?;
    let end = match text.lines().enumerate().last() {
        Some((i, l)) => Pos {
            line: i + 1,
            column: l.chars().count() + 1,
        },
        None => Pos { line: 1, column: 1 },
    };
    let mut p = Parser { toks, at: 0, end, vocab };
    let f = p.formula()?;
    if let Some((tok, pos)) = p.toks.get(p.at) {
        return Err(syntax(*pos, format!("unexpected {tok:?} after complete formula")));
    }
    Ok(f)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
    vocab: &'a Vocabulary,
}

/// `x<i>` with `i >= 1`.
fn variable_index(s: &str) -> Option<Var> {
    let digits = s.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

impl Parser<'_> {
    fn peek(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.at + ahead).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Result<(Tok, Pos)> {
        let t = self
            .toks
            .get(self.at)
            .cloned()
            .ok_or_else(|| syntax(self.end, "unexpected end of input"))?;
        self.at += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (tok, pos) = self.bump()?;
        if tok == want {
            Ok(())
        } else {
            Err(syntax(pos, format!("expected {want:?}, found {tok:?}")))
        }
    }

    fn variable(&mut self) -> Result<Var> {
        match self.bump()? {
            (Tok::Ident(s), pos) => {
                variable_index(&s).ok_or_else(|| syntax(pos, format!("malformed variable token {s:?}")))
            }
            (tok, pos) => Err(syntax(pos, format!("expected a variable, found {tok:?}"))),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let pos = self.pos();
        match self.peek(0).cloned() {
            Some(Tok::Bang) => {
                self.at += 1;
                Ok(self.formula()?.negate())
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let first = self.formula()?;
                let op = match self.peek(0) {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        return Ok(first);
                    }
                    Some(t @ (Tok::Amp | Tok::Bar)) => t.clone(),
                    _ => {
                        let (tok, pos) = self.bump()?;
                        return Err(syntax(pos, format!("expected '&', '|' or ')', found {tok:?}")));
                    }
                };
                let mut parts = vec![first];
                loop {
                    match self.bump()? {
                        (Tok::RParen, _) => break,
                        (t, _) if t == op => parts.push(self.formula()?),
                        (t, pos) => {
                            return Err(syntax(pos, format!("expected {op:?} or ')', found {t:?}")));
                        }
                    }
                }
                Ok(if op == Tok::Amp {
                    Formula::big_and(parts)
                } else {
                    Formula::big_or(parts)
                }
                .expect("at least two operands"))
            }
            Some(Tok::Ident(name)) => {
                // quantifier: `Ex1.` or `E x1.`
                let glued = (name.len() > 1 && (name.starts_with('E') || name.starts_with('A')))
                    .then(|| variable_index(&name[1..]))
                    .flatten();
                if let (Some(v), Some(Tok::Dot)) = (glued, self.peek(1)) {
                    self.at += 2;
                    return self.quantified(&name[..1], v);
                }
                if name == "E" || name == "A" {
                    if let (Some(Tok::Ident(var)), Some(Tok::Dot)) = (self.peek(1), self.peek(2)) {
                        if let Some(v) = variable_index(var) {
                            self.at += 3;
                            return self.quantified(&name, v);
                        }
                    }
                }
                if self.peek(1) == Some(&Tok::LParen) {
                    self.at += 2;
                    let p = self
                        .vocab
                        .index_of(&name)
                        .ok_or_else(|| syntax(pos, format!("unknown predicate {name:?}")))?;
                    let v = self.variable()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Formula::Pred(p, v));
                }
                let x = self.variable()?;
                let f = match self.bump()? {
                    (Tok::Equals, _) => Formula::Eq,
                    (Tok::NotEquals, _) => Formula::Neq,
                    (tok, pos) => return Err(syntax(pos, format!("expected '=' or '!=', found {tok:?}"))),
                };
                Ok(f(x, self.variable()?))
            }
            Some(tok) => Err(syntax(pos, format!("unexpected {tok:?}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }

    fn quantified(&mut self, q: &str, v: Var) -> Result<Formula> {
        let body = self.formula()?;
        Ok(if q == "E" {
            Formula::exists(v, body)
        } else {
            Formula::forall(v, body)
        })
    }
}
