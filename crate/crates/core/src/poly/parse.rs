//! Text syntax for polynomials: integers, identifiers, `+ - * ^` and
//! parentheses. Division and implicit multiplication are rejected.

use num_bigint::BigInt;
use thiserror::Error;

use super::MPoly;
use crate::field::Field;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1024;
/// Largest number of terms any intermediate result may have.
pub const MAX_TERMS: usize = 100_000;
// Bound on term-pair products in one multiplication, so hostile input cannot
// stall the parser before the term limit triggers.
const MAX_PRODUCT_WORK: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token at offset {pos}: expected {expected}")]
    Expected { pos: usize, expected: &'static str },
    #[error("division is not supported (offset {pos})")]
    Division { pos: usize },
    #[error("unknown variable {name:?} at offset {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("exponent at offset {pos} exceeds {max}", max = MAX_EXPONENT)]
    ExponentTooLarge { pos: usize },
    #[error("polynomial exceeds {max} terms", max = MAX_TERMS)]
    TooManyTerms,
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateName(String),
    #[error("'W' is reserved for the Rees grading")]
    ReservedName,
}

/// A chart ring: base field plus ordered variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    field: Field,
    names: Vec<String>,
}

impl Ring {
    pub fn new(field: Field, names: Vec<String>) -> Result<Self, ParseError> {
        for (i, n) in names.iter().enumerate() {
            if n == "W" {
                return Err(ParseError::ReservedName);
            }
            if !is_identifier(n) {
                return Err(ParseError::InvalidName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(ParseError::DuplicateName(n.clone()));
            }
        }
        Ok(Ring { field, names })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parse(&self, text: &str) -> Result<MPoly, ParseError> {
        parse_poly(self, text)
    }

    pub fn format(&self, f: &MPoly) -> String {
        f.to_text(&self.names)
    }

    pub fn var(&self, index: usize) -> MPoly {
        MPoly::var(self.field, self.nvars(), index)
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((start, Tok::Int(s.parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '/' => return Err(ParseError::Division { pos: start }),
            other => return Err(ParseError::UnexpectedChar { pos: start, ch: other }),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    // Nested parentheses are bounded to keep recursion shallow.
    depth: usize,
}

const MAX_DEPTH: usize = 256;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(usize::MAX)
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
            check_size(&acc)?;
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            acc = checked_mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            self.enter()?;
            let inner = self.unary();
            self.depth -= 1;
            return Ok(-&inner?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            let e = match self.toks.get(self.pos) {
                Some((_, Tok::Int(n))) => n.clone(),
                Some((o, _)) => return Err(ParseError::Expected { pos: *o, expected: "exponent" }),
                None => return Err(ParseError::UnexpectedEnd),
            };
            self.pos += 1;
            if e > BigInt::from(MAX_EXPONENT) {
                return Err(ParseError::ExponentTooLarge { pos: at });
            }
            let e: u32 = e.try_into().expect("bounded exponent");
            return checked_pow(&base, e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let (off, tok) = match self.toks.get(self.pos) {
            Some(t) => t.clone(),
            None => return Err(ParseError::UnexpectedEnd),
        };
        self.pos += 1;
        let field = self.ring.field();
        let n = self.ring.nvars();
        match tok {
            Tok::Int(v) => Ok(MPoly::constant(field, n, field.from_int(&v))),
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => Ok(MPoly::var(field, n, i)),
                None => Err(ParseError::UnknownVariable { pos: off, name }),
            },
            Tok::LParen => {
                self.enter()?;
                let inner = self.expr();
                self.depth -= 1;
                let inner = inner?;
                match self.toks.get(self.pos) {
                    Some((_, Tok::RParen)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some((o, _)) => Err(ParseError::Expected { pos: *o, expected: "')'" }),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            _ => Err(ParseError::Expected { pos: off, expected: "number, variable or '('" }),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::Expected { pos: self.offset(), expected: "shallower nesting" });
        }
        Ok(())
    }
}

fn check_size(f: &MPoly) -> Result<(), ParseError> {
    if f.len() > MAX_TERMS {
        Err(ParseError::TooManyTerms)
    } else {
        Ok(())
    }
}

fn checked_mul(a: &MPoly, b: &MPoly) -> Result<MPoly, ParseError> {
    if a.len().saturating_mul(b.len()) > MAX_PRODUCT_WORK {
        return Err(ParseError::TooManyTerms);
    }
    let out = a * b;
    check_size(&out)?;
    Ok(out)
}

fn checked_pow(base: &MPoly, e: u32) -> Result<MPoly, ParseError> {
    let mut result = MPoly::one(base.field(), base.nvars());
    let mut sq = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = checked_mul(&result, &sq)?;
        }
        e >>= 1;
        if e > 0 {
            sq = checked_mul(&sq, &sq)?;
        }
    }
    Ok(result)
}

/// Parse `text` as a polynomial in `ring`.
pub fn parse_poly(ring: &Ring, text: &str) -> Result<MPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { ring, toks, pos: 0, depth: 0 };
    let out = p.expr()?;
    if let Some((off, _)) = p.toks.get(p.pos) {
        // Anything left over is either a stray ')' or an implicit product.
        return Err(ParseError::Expected { pos: *off, expected: "operator" });
    }
    Ok(out)
}
