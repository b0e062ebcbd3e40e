//! Text input: scalars, polynomials and session files.
//!
//! ```text
//! file   := line*
//! line   := "vars:" IDENT+
//!         | "poly" IDENT "=" EXPR
//!         | "ideal" IDENT "=" "{" EXPR ("," EXPR)* "}"
//!         | "mat" IDENT "=" "[[" EXPR "," EXPR "],[" EXPR "," EXPR "]]"
//! ```
//!
//! Literals are rationals, `i`, `t`, `t^(p/q)`, `t^-1`; a rational directly
//! followed by `i` (`2i`) is an imaginary literal. `#` starts a comment.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hahn::{Exponent, HahnScalar};
use crate::poly::{Monomial, ValuedPoly};
use crate::sl2::HahnMat2;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Imag(BigInt),
    Ident(String),
    Sym(char),
    Newline,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        if c == '\n' {
            out.push(Token {
                tok: Tok::Newline,
                line,
                column: col,
            });
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            k += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while k < chars.len() && chars[k] != '\n' {
                k += 1;
            }
            continue;
        }
        let start = k;
        let tok = if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            let n: BigInt = digits.parse().expect("digits");
            let ident_char = |ch: char| ch.is_alphanumeric() || ch == '_';
            if k < chars.len() && chars[k] == 'i' && !chars.get(k + 1).copied().is_some_and(ident_char) {
                k += 1;
                Tok::Imag(n)
            } else {
                Tok::Int(n)
            }
        } else if c.is_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            Tok::Ident(chars[start..k].iter().collect())
        } else if "+-*/^()[]{},=:".contains(c) {
            k += 1;
            Tok::Sym(c)
        } else {
            return Err(err(l0, c0, format!("unexpected character '{c}'")));
        };
        col += k - start;
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    /// Bracket depth; newlines inside brackets are skipped.
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a [String]) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            vars,
            depth: 0,
        })
    }

    fn skip_nl(&mut self) {
        if self.depth > 0 {
            while self.toks[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
        }
    }

    fn peek(&mut self) -> &Token {
        self.skip_nl();
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        self.skip_nl();
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn here(&mut self, message: impl Into<String>) -> Error {
        let t = self.peek().clone();
        err(t.line, t.column, message)
    }

    fn is_sym(&mut self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            match c {
                '(' | '[' | '{' => self.depth += 1,
                ')' | ']' | '}' => self.depth = self.depth.saturating_sub(1),
                _ => {}
            }
            self.next();
            Ok(())
        } else {
            Err(self.here(format!("expected '{c}'")))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, usize, usize)> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.column)),
            _ => Err(err(t.line, t.column, "expected a name")),
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn constant(&self, c: HahnScalar) -> ValuedPoly {
        ValuedPoly::constant(self.nvars(), c)
    }

    fn expr(&mut self) -> Result<ValuedPoly> {
        let mut acc = self.term()?;
        loop {
            if self.is_sym('+') {
                self.next();
                acc = acc.add(&self.term()?);
            } else if self.is_sym('-') {
                self.next();
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ValuedPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.next();
                acc = acc.mul(&self.unary()?);
            } else if self.is_sym('/') {
                self.next();
                let at = self.peek().clone();
                let d = self.unary()?;
                acc = self.divide(&acc, &d, &at)?;
            } else {
                if self.starts_atom() {
                    return Err(self.here("juxtaposition is not allowed; use '*'"));
                }
                return Ok(acc);
            }
        }
    }

    fn divide(&self, a: &ValuedPoly, d: &ValuedPoly, at: &Token) -> Result<ValuedPoly> {
        if !d.is_constant() {
            return Err(err(at.line, at.column, "division by a non-constant polynomial"));
        }
        let inv = constant_term(d).inv().map_err(|_| err(at.line, at.column, "division by zero"))?;
        Ok(a.scale(&inv))
    }

    fn starts_atom(&mut self) -> bool {
        matches!(
            self.peek().tok,
            Tok::Int(_) | Tok::Imag(_) | Tok::Ident(_) | Tok::Sym('(')
        )
    }

    fn unary(&mut self) -> Result<ValuedPoly> {
        if self.is_sym('-') {
            self.next();
            return Ok(self.unary()?.neg());
        }
        if self.is_sym('+') {
            self.next();
            return self.unary();
        }
        self.power()
    }

    /// `['-'] INT` or `'(' ['-'] INT ['/' INT] ')'`; rational only in parens.
    fn exponent(&mut self, allow_fraction: bool) -> Result<Exponent> {
        let paren = self.is_sym('(');
        if paren {
            self.expect_sym('(')?;
        }
        let negative = self.is_sym('-');
        if negative {
            self.next();
        }
        let t = self.next();
        let Tok::Int(p) = t.tok else {
            return Err(err(t.line, t.column, "exponent must be a rational number"));
        };
        let mut q = BigInt::one();
        if paren && self.is_sym('/') {
            self.next();
            let t = self.next();
            match t.tok {
                Tok::Int(d) if !d.is_zero() => q = d,
                _ => return Err(err(t.line, t.column, "exponent must be a rational number")),
            }
            if !allow_fraction {
                return Err(err(t.line, t.column, "only t takes a fractional exponent"));
            }
        }
        if paren {
            self.expect_sym(')')?;
        }
        let e = Exponent::new(p, q);
        Ok(if negative { -e } else { e })
    }

    fn power(&mut self) -> Result<ValuedPoly> {
        let start = self.peek().clone();
        if start.tok == Tok::Ident("t".into()) {
            self.next();
            let e = if self.is_sym('^') {
                self.next();
                self.exponent(true)?
            } else {
                Exponent::one()
            };
            return Ok(self.constant(HahnScalar::t_pow(e)));
        }
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.next();
        let at = self.peek().clone();
        let e = self.exponent(false)?;
        let k: i64 = e
            .to_integer()
            .try_into()
            .map_err(|_| err(at.line, at.column, "exponent too large"))?;
        let big = || err(at.line, at.column, "exponent too large");
        if k >= 0 {
            Ok(base.pow(u32::try_from(k).map_err(|_| big())?))
        } else {
            let one = self.constant(HahnScalar::one());
            let inv = self.divide(&one, &base, &at)?;
            Ok(inv.pow(u32::try_from(-k).map_err(|_| big())?))
        }
    }

    fn atom(&mut self) -> Result<ValuedPoly> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.next();
                Ok(self.constant(HahnScalar::from_coeff(Coeff::real(n.into()))))
            }
            Tok::Imag(n) => {
                self.next();
                let c = Coeff::new(Exponent::zero(), n.into());
                Ok(self.constant(HahnScalar::from_coeff(c)))
            }
            Tok::Ident(name) => {
                self.next();
                if name == "i" {
                    return Ok(self.constant(HahnScalar::from_coeff(Coeff::i())));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(k) => Ok(ValuedPoly::var(self.nvars(), k)),
                    None => Err(err(t.line, t.column, format!("unknown variable '{name}'"))),
                }
            }
            Tok::Sym('(') => {
                self.expect_sym('(')?;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::End | Tok::Newline => Err(err(t.line, t.column, "unexpected end of expression")),
            _ => Err(err(t.line, t.column, "expected a number, variable or '('")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        while self.toks[self.pos].tok == Tok::Newline {
            self.pos += 1;
        }
        match self.peek().tok {
            Tok::End => Ok(()),
            Tok::Sym(c) => Err(self.here(format!("unexpected '{c}'"))),
            _ => Err(self.here("unexpected input")),
        }
    }
}

fn constant_term(p: &ValuedPoly) -> HahnScalar {
    p.coeff(&Monomial::one(p.nvars())).cloned().unwrap_or_else(HahnScalar::zero)
}

/// Parses a polynomial over the named variables.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<ValuedPoly> {
    check_names(vars)?;
    let mut p = Parser::new(text, vars)?;
    p.depth = 1;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses an element of 𝕂.
pub fn parse_scalar(text: &str) -> Result<HahnScalar> {
    let p = parse_poly(text, &[])?;
    Ok(constant_term(&p))
}

/// Parses a Gaussian rational.
pub fn parse_coeff(text: &str) -> Result<Coeff> {
    let s = parse_scalar(text)?;
    if s.is_zero() {
        return Ok(Coeff::zero());
    }
    if s.is_polynomial() && s.num().terms().len() == 1 && s.num().terms()[0].0.is_zero() {
        return Ok(s.num().terms()[0].1.clone());
    }
    Err(err(1, 1, format!("'{text}' is not a complex constant")))
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rational(text: &str) -> Result<Exponent> {
    let s = parse_scalar(text)?;
    let c = parse_coeff(text)?;
    if !c.im.is_zero() || (!s.is_zero() && !s.is_polynomial()) {
        return Err(err(1, 1, format!("'{text}' is not a rational number")));
    }
    Ok(c.re)
}

fn check_names(vars: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for v in vars {
        if v == "t" || v == "i" {
            return Err(err(1, 1, format!("'{v}' is reserved")));
        }
        if !seen.insert(v) {
            return Err(err(1, 1, format!("variable '{v}' declared twice")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum Item {
    Poly(ValuedPoly),
    Ideal(Vec<ValuedPoly>),
    Mat(HahnMat2),
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Poly(_) => "poly",
            Item::Ideal(_) => "ideal",
            Item::Mat(_) => "mat",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub line: usize,
    pub item: Item,
}

#[derive(Clone, Debug, Default)]
pub struct Session {
    pub vars: Vec<String>,
    pub entries: Vec<Entry>,
}

impl Session {
    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn first_of(&self, kind: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.item.kind() == kind)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

const RESERVED: [&str; 6] = ["t", "i", "vars", "poly", "ideal", "mat"];

/// Parses a session file.
pub fn parse_session(text: &str) -> Result<Session> {
    let mut session = Session::default();
    let toks = tokenize(text)?;
    let mut vars_line: Option<usize> = None;
    let mut p = Parser {
        toks,
        pos: 0,
        vars: &[],
        depth: 0,
    };
    let mut names: HashSet<String> = HashSet::new();
    loop {
        while p.toks[p.pos].tok == Tok::Newline {
            p.pos += 1;
        }
        let head = p.peek().clone();
        let kw = match &head.tok {
            Tok::End => break,
            Tok::Ident(s) => s.clone(),
            _ => return Err(err(head.line, head.column, "expected 'vars:', 'poly', 'ideal' or 'mat'")),
        };
        p.next();
        if kw == "vars" {
            if vars_line.is_some() {
                return Err(err(head.line, head.column, "variables declared twice"));
            }
            if !session.entries.is_empty() {
                return Err(err(head.line, head.column, "'vars:' must precede all definitions"));
            }
            p.expect_sym(':')?;
            let mut vars = Vec::new();
            while let Tok::Ident(v) = p.peek().tok.clone() {
                let t = p.next();
                if RESERVED.contains(&v.as_str()) {
                    return Err(err(t.line, t.column, format!("'{v}' is reserved")));
                }
                if vars.contains(&v) {
                    return Err(err(t.line, t.column, format!("variable '{v}' declared twice")));
                }
                vars.push(v);
            }
            if vars.is_empty() {
                return Err(p.here("expected variable names"));
            }
            session.vars = vars;
            vars_line = Some(head.line);
            end_of_line(&mut p)?;
            continue;
        }
        if !["poly", "ideal", "mat"].contains(&kw.as_str()) {
            return Err(err(head.line, head.column, format!("unknown statement '{kw}'")));
        }
        let (name, nl, nc) = p.expect_ident()?;
        if RESERVED.contains(&name.as_str()) || session.vars.contains(&name) {
            return Err(err(nl, nc, format!("'{name}' is reserved")));
        }
        if !names.insert(name.clone()) {
            return Err(err(nl, nc, format!("'{name}' defined twice")));
        }
        p.expect_sym('=')?;
        let vars = session.vars.clone();
        let item = {
            let mut sub = Parser {
                toks: std::mem::take(&mut p.toks),
                pos: p.pos,
                vars: &vars,
                depth: 0,
            };
            let item = match kw.as_str() {
                "poly" => sub.expr().map(Item::Poly),
                "ideal" => ideal_body(&mut sub).map(Item::Ideal),
                _ => mat_body(&mut sub).map(Item::Mat),
            };
            p.toks = std::mem::take(&mut sub.toks);
            p.pos = sub.pos;
            item?
        };
        end_of_line(&mut p)?;
        session.entries.push(Entry {
            name,
            line: head.line,
            item,
        });
    }
    Ok(session)
}

fn end_of_line(p: &mut Parser) -> Result<()> {
    match p.peek().tok {
        Tok::Newline => {
            p.pos += 1;
            Ok(())
        }
        Tok::End => Ok(()),
        _ => Err(p.here("expected end of line")),
    }
}

fn ideal_body(p: &mut Parser) -> Result<Vec<ValuedPoly>> {
    p.expect_sym('{')?;
    let mut gens = vec![p.expr()?];
    while p.is_sym(',') {
        p.next();
        gens.push(p.expr()?);
    }
    p.expect_sym('}')?;
    Ok(gens)
}

fn mat_body(p: &mut Parser) -> Result<HahnMat2> {
    let mut entries = Vec::with_capacity(4);
    p.expect_sym('[')?;
    for row in 0..2 {
        if row == 1 {
            p.expect_sym(',')?;
        }
        p.expect_sym('[')?;
        for col in 0..2 {
            if col == 1 {
                p.expect_sym(',')?;
            }
            let at = p.peek().clone();
            let e = p.expr()?;
            if !e.is_constant() {
                return Err(err(at.line, at.column, "matrix entries must be scalars"));
            }
            entries.push(constant_term(&e));
        }
        p.expect_sym(']')?;
    }
    p.expect_sym(']')?;
    let [a, b, c, d]: [HahnScalar; 4] = entries.try_into().expect("four entries");
    Ok(HahnMat2::new(a, b, c, d))
}
