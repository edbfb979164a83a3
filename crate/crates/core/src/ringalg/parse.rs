//! Plain-text presentations:
//!
//! ```text
//! field Q                  # or F2, F3, F<p>
//! var b2 2
//! var b4 4
//! let c4 = b2^2 - 24*b4
//! gen Delta = (b2^2*b4^2 - 32*b4^3)/4
//! basis 1, b2, b4
//! seq b2^2, b2^3
//! bound 48
//! convention c6 = -b2^3 + 36*b2*b4
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Field, GradedAlgebra, Poly};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
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
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    algebra: &'a GradedAlgebra,
    names: &'a BTreeMap<String, Poly>,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.src))
    }

    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                &acc * &rhs
            } else {
                let c = rhs
                    .as_constant()
                    .ok_or_else(|| self.error("division by a non-constant"))?;
                if c.is_zero() {
                    return Err(self.error("division by zero"));
                }
                acc.scale(&(Rational::from_integer(1.into()) / c))
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let Some(Token::Int(e)) = self.tokens.get(self.pos).cloned() else {
                return Err(self.error("exponent must be a nonnegative integer"));
            };
            self.pos += 1;
            let e = e
                .to_u32()
                .filter(|&e| e <= 1000)
                .ok_or_else(|| self.error("exponent too large"))?;
            return Ok(base.pow(e, self.algebra.nvars()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let nvars = self.algebra.nvars();
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Poly::constant(nvars, Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if let Some(p) = self.names.get(&name) {
                    Ok(p.clone())
                } else {
                    self.algebra
                        .var(&name)
                        .ok_or_else(|| self.error(&format!("unknown name `{name}`")))
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.error("missing `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, name or `(`")),
        }
    }
}

/// Parse an expression in the variables of `algebra` and the given names.
pub fn parse_expression(src: &str, algebra: &GradedAlgebra, names: &BTreeMap<String, Poly>) -> Result<Poly> {
    let mut parser = Parser {
        tokens: tokenize(src)?,
        pos: 0,
        algebra,
        names,
        src,
    };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub algebra: GradedAlgebra,
    pub lets: Vec<(String, Poly)>,
    pub gens: Vec<(String, Poly)>,
    pub basis: Vec<(String, Poly)>,
    pub seq: Vec<(String, Poly)>,
    pub bound: Option<u64>,
    pub convention: Option<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Self> {
        let mut algebra = GradedAlgebra {
            field: Field::Rational,
            vars: Vec::new(),
        };
        let mut field_seen = false;
        let mut names: BTreeMap<String, Poly> = BTreeMap::new();
        let mut out = Presentation {
            algebra: algebra.clone(),
            lets: Vec::new(),
            gens: Vec::new(),
            basis: Vec::new(),
            seq: Vec::new(),
            bound: None,
            convention: None,
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |why: &str| Error::Parse(format!("line {}: {why}: `{raw}`", lineno + 1));
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match keyword {
                "field" => {
                    if field_seen || !algebra.vars.is_empty() {
                        return Err(bad("field must come first and only once"));
                    }
                    algebra.field = rest.parse()?;
                    field_seen = true;
                }
                "var" => {
                    let fields: Vec<&str> = rest.split_whitespace().collect();
                    let [name, degree] = fields[..] else {
                        return Err(bad("expected `var name degree`"));
                    };
                    if !valid_name(name) || names.contains_key(name) {
                        return Err(bad("bad or duplicate variable name"));
                    }
                    if !names.is_empty() || !out.basis.is_empty() || !out.seq.is_empty() {
                        return Err(bad("variables must be declared before expressions"));
                    }
                    let degree: u64 = degree.parse().map_err(|_| bad("bad degree"))?;
                    algebra.add_variable(name, degree)?;
                }
                "let" | "gen" => {
                    let (name, expr) = rest
                        .split_once('=')
                        .ok_or_else(|| bad("expected `name = expression`"))?;
                    let name = name.trim();
                    if !valid_name(name) || names.contains_key(name) || algebra.var(name).is_some() {
                        return Err(bad("bad or duplicate name"));
                    }
                    let p = parse_expression(expr.trim(), &algebra, &names)?;
                    names.insert(name.to_string(), p.clone());
                    if keyword == "let" {
                        out.lets.push((name.to_string(), p));
                    } else {
                        out.gens.push((name.to_string(), p));
                    }
                }
                "basis" | "seq" => {
                    for item in rest.split(',') {
                        let item = item.trim();
                        let p = parse_expression(item, &algebra, &names)?;
                        let target = if keyword == "basis" {
                            &mut out.basis
                        } else {
                            &mut out.seq
                        };
                        target.push((item.to_string(), p));
                    }
                }
                "bound" => out.bound = Some(rest.parse().map_err(|_| bad("bad bound"))?),
                "convention" => out.convention = Some(rest.to_string()),
                _ => return Err(bad("unknown directive")),
            }
        }
        out.algebra = algebra;
        Ok(out)
    }

    /// A `let` or `gen` definition by name.
    pub fn get(&self, name: &str) -> Option<&Poly> {
        self.lets
            .iter()
            .chain(&self.gens)
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }
}
