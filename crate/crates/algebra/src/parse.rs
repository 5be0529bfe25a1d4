//! Infix polynomial parser and the ideal text format.
//!
//! ```text
//! vars: x y z
//! x^2 + y^2 - 1
//! 3/4*x*y - z
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::ideal::Ideal;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `vars:` header")]
    MissingHeader,
    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { line: usize, name: String },
    #[error("line {line}: division by a non-constant or zero polynomial")]
    BadDivision { line: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str, line: usize) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(ParseError::Syntax { line, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [String],
    line: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, msg: msg.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => return Err(ParseError::BadDivision { line: self.line }),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.names.len();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(n, BigRational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.names.iter().position(|x| *x == name) {
                    Some(i) => Ok(Polynomial::var(n, i)),
                    None => Err(ParseError::UnknownVariable { line: self.line, name }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn parse_line(s: &str, names: &[String], line: usize) -> Result<Polynomial, ParseError> {
    let toks = tokenize(s, line)?;
    let mut p = Parser { toks, pos: 0, names, line };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses one polynomial over the given variable names.
pub fn parse_polynomial(s: &str, names: &[String]) -> Result<Polynomial, ParseError> {
    parse_line(s, names, 1)
}

/// Parses the `vars:` header plus generator lines into an ideal (grevlex).
pub fn parse_ideal_text(text: &str) -> Result<Ideal, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match &names {
            None => {
                let rest = line.strip_prefix("vars:").ok_or(ParseError::MissingHeader)?;
                let vs: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for v in &vs {
                    if !v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') {
                        return Err(ParseError::Syntax { line: k + 1, msg: format!("bad variable name `{v}`") });
                    }
                }
                names = Some(vs);
            }
            Some(ns) => gens.push(parse_line(line, ns, k + 1)?),
        }
    }
    let names = names.ok_or(ParseError::MissingHeader)?;
    Ok(Ideal::new(names, gens))
}
