//! `.syz` session files.
//!
//! ```text
//! # comment
//! ring p=101 vars=x,y
//! ideal I = x^3, x*y^2, y^3
//! ideal J = (x + y)^2 - 3*y^3
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::monomial::MAX_VARS;
use crate::poly::{Poly, PolyRing};
use crate::quotient::QuotientRing;
use crate::stdbasis::{EngineConfig, Ideal};

/// Highest total degree accepted in an input expression.
pub const MAX_INPUT_DEGREE: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedIdeal {
    pub name: String,
    pub gens: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionSpec {
    pub p: u32,
    pub vars: Vec<String>,
    pub ideals: Vec<NamedIdeal>,
}

impl SessionSpec {
    pub fn ring(&self) -> Result<Arc<PolyRing>> {
        Ok(Arc::new(PolyRing::new(
            PrimeField::new(self.p)?,
            self.vars.clone(),
        )?))
    }

    pub fn find(&self, name: &str) -> Option<&NamedIdeal> {
        self.ideals.iter().find(|i| i.name == name)
    }

    pub fn ideal(&self, name: &str, config: EngineConfig) -> Result<Ideal> {
        let ni = self
            .find(name)
            .ok_or_else(|| Error::invalid(format!("no ideal named {name}")))?;
        Ok(Ideal::with_config(self.ring()?, ni.gens.clone(), config))
    }

    pub fn quotient(&self, name: &str, config: EngineConfig) -> Result<QuotientRing> {
        QuotientRing::new(self.ideal(name, config)?)
    }

    /// The same session over another prime: coefficients are read as signed
    /// integers in `(-p/2, p/2]` and reduced again.
    pub fn with_prime(&self, p: u32) -> Result<SessionSpec> {
        let old = PrimeField::new(self.p)?;
        let new = PrimeField::new(p)?;
        let ideals = self
            .ideals
            .iter()
            .map(|ni| NamedIdeal {
                name: ni.name.clone(),
                gens: ni
                    .gens
                    .iter()
                    .map(|g| {
                        let t = g
                            .terms()
                            .iter()
                            .map(|&(m, c)| (m, new.elem(old.signed(c))))
                            .collect();
                        Poly::from_terms(&new, t)
                    })
                    .collect(),
            })
            .collect();
        Ok(SessionSpec {
            p,
            vars: self.vars.clone(),
            ideals,
        })
    }

    /// Normalized text form; `parse_session(&s.print())` gives `s` back.
    pub fn print(&self) -> String {
        let f = PrimeField::new(self.p).expect("validated prime");
        let mut out = format!("ring p={} vars={}\n", self.p, self.vars.join(","));
        for ni in &self.ideals {
            let gens: Vec<String> = ni
                .gens
                .iter()
                .map(|g| g.to_string_with(&f, &self.vars))
                .collect();
            out.push_str(&format!("ideal {} = {}\n", ni.name, gens.join(", ")));
        }
        out
    }

    pub fn show_ideal(&self, ni: &NamedIdeal) -> String {
        let f = PrimeField::new(self.p).expect("validated prime");
        let gens: Vec<String> = ni
            .gens
            .iter()
            .map(|g| g.to_string_with(&f, &self.vars))
            .collect();
        format!("({})", gens.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(line_no: usize, text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Int(chars[start..i].iter().collect()),
                col,
            });
        } else if "+-*^(),=".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                col,
            });
            i += 1;
        } else if c == '\u{2212}' {
            // typographic minus
            out.push(Token {
                tok: Tok::Sym('-'),
                col,
            });
            i += 1;
        } else {
            return Err(err(line_no, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(err(self.line, self.col(), msg))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected '{kw}'")),
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return self.fail("unexpected trailing input");
        }
        Ok(())
    }
}

struct ExprCtx<'a> {
    field: &'a PrimeField,
    vars: &'a [String],
}

impl ExprCtx<'_> {
    fn int_mod(&self, digits: &str) -> Fp {
        let p = self.field.modulus() as u64;
        Fp(digits
            .bytes()
            .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p) as u32)
    }

    fn expr(&self, c: &mut Cursor) -> Result<Poly> {
        let mut acc = self.term(c)?;
        loop {
            if c.eat('+') {
                acc = acc.add(self.field, &self.term(c)?);
            } else if c.eat('-') {
                acc = acc.sub(self.field, &self.term(c)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<Poly> {
        let mut acc = self.unary(c)?;
        while c.peek() == Some(&Tok::Sym('*')) {
            let col = c.col();
            c.pos += 1;
            let rhs = self.unary(c)?;
            if acc.max_degree() + rhs.max_degree() > MAX_INPUT_DEGREE {
                return Err(err(
                    c.line,
                    col,
                    format!("degree exceeds {MAX_INPUT_DEGREE}"),
                ));
            }
            acc = acc.mul(self.field, &rhs);
        }
        Ok(acc)
    }

    fn unary(&self, c: &mut Cursor) -> Result<Poly> {
        if c.eat('-') {
            return Ok(self.unary(c)?.neg(self.field));
        }
        if c.eat('+') {
            return self.unary(c);
        }
        self.power(c)
    }

    fn power(&self, c: &mut Cursor) -> Result<Poly> {
        let base = self.atom(c)?;
        if !c.eat('^') {
            return Ok(base);
        }
        let col = c.col();
        let e = match c.next() {
            Some(Tok::Int(d)) => d.parse::<u32>().ok().filter(|&e| e <= MAX_INPUT_DEGREE),
            _ => return Err(err(c.line, col, "expected an exponent")),
        };
        let Some(e) = e else {
            return Err(err(
                c.line,
                col,
                format!("exponent above {MAX_INPUT_DEGREE}"),
            ));
        };
        if base.max_degree() * e > MAX_INPUT_DEGREE {
            return Err(err(
                c.line,
                col,
                format!("degree exceeds {MAX_INPUT_DEGREE}"),
            ));
        }
        Ok(base.pow(self.field, e))
    }

    fn atom(&self, c: &mut Cursor) -> Result<Poly> {
        let col = c.col();
        match c.next() {
            Some(Tok::Int(d)) => Ok(Poly::constant(self.int_mod(&d))),
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Poly::var(i)),
                None => Err(err(c.line, col, format!("undeclared variable '{name}'"))),
            },
            Some(Tok::Sym('(')) => {
                let inner = self.expr(c)?;
                c.expect(')')?;
                Ok(inner)
            }
            Some(_) => Err(err(c.line, col, "expected a number, variable or '('")),
            None => Err(err(c.line, col, "unexpected end of line")),
        }
    }
}

fn parse_ring(c: &mut Cursor) -> Result<(u32, Vec<String>)> {
    c.keyword("ring")?;
    c.keyword("p")?;
    c.expect('=')?;
    let col = c.col();
    let p = match c.next() {
        Some(Tok::Int(d)) => d
            .parse::<u32>()
            .map_err(|_| err(c.line, col, "modulus too large"))?,
        _ => return Err(err(c.line, col, "expected the modulus")),
    };
    if PrimeField::new(p).is_err() {
        return Err(err(
            c.line,
            col,
            format!("modulus {p} is not an odd prime below 2^31"),
        ));
    }
    c.keyword("vars")?;
    c.expect('=')?;
    let mut vars = Vec::new();
    loop {
        let col = c.col();
        let v = c.ident("a variable name")?;
        if v == "ring" || v == "ideal" {
            return Err(err(c.line, col, format!("'{v}' is reserved")));
        }
        if vars.contains(&v) {
            return Err(err(c.line, col, format!("variable '{v}' declared twice")));
        }
        vars.push(v);
        if !c.eat(',') {
            break;
        }
    }
    if vars.len() > MAX_VARS {
        return c.fail(format!("at most {MAX_VARS} variables are supported"));
    }
    c.done()?;
    Ok((p, vars))
}

pub fn parse_session(text: &str) -> Result<SessionSpec> {
    parse_session_over(text, None)
}

/// Like [`parse_session`], but integer literals are reduced modulo `p` when
/// given, in place of the declared characteristic.
pub fn parse_session_over(text: &str, p: Option<u32>) -> Result<SessionSpec> {
    if let Some(p) = p {
        PrimeField::new(p)?;
    }
    let mut ring: Option<(u32, Vec<String>)> = None;
    let mut ideals: Vec<NamedIdeal> = Vec::new();
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let toks = lex(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let end_col = raw.chars().count() + 1;
        let mut c = Cursor {
            toks: &toks,
            pos: 0,
            line,
            end_col,
        };
        match c.peek() {
            Some(Tok::Ident(s)) if s == "ring" => {
                if ring.is_some() {
                    return c.fail("ring declared twice");
                }
                let (declared, vars) = parse_ring(&mut c)?;
                ring = Some((p.unwrap_or(declared), vars));
            }
            Some(Tok::Ident(s)) if s == "ideal" => {
                let Some((p, vars)) = &ring else {
                    return c.fail("ideal before the ring declaration");
                };
                c.pos += 1;
                let col = c.col();
                let name = c.ident("an ideal name")?;
                if ideals.iter().any(|i| i.name == name) {
                    return Err(err(line, col, format!("ideal '{name}' defined twice")));
                }
                c.expect('=')?;
                let field = PrimeField::new(*p)?;
                let ctx = ExprCtx {
                    field: &field,
                    vars,
                };
                let mut gens = Vec::new();
                loop {
                    gens.push(ctx.expr(&mut c)?);
                    if !c.eat(',') {
                        break;
                    }
                }
                c.done()?;
                ideals.push(NamedIdeal { name, gens });
            }
            _ => return c.fail("expected 'ring' or 'ideal'"),
        }
    }
    let Some((p, vars)) = ring else {
        return Err(err(last_line.max(1), 1, "missing ring declaration"));
    };
    if ideals.is_empty() {
        return Err(err(last_line.max(1), 1, "no ideal declared"));
    }
    Ok(SessionSpec { p, vars, ideals })
}
