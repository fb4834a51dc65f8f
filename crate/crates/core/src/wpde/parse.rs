//! Line-oriented text format for operator systems.
//!
//! ```text
//! # comment
//! coord x 1
//! coord z 2
//! param a
//! field X = D(x) + 1/2*y*D(z)
//! eq X^3 = a*Y^2
//! basis y^2 + a/3*x^3
//! frame -1/2*Z^2
//! truncate 8
//! ```
//!
//! Juxtaposed names such as `xy` or `XYX` are split into declared names.
//! In operator expressions coefficients are written to the left of fields.

use crate::error::{Error, Result};
use crate::rational::Rat;

use super::poly::Poly;
use super::space::{Coordinate, ModelSpace, Operator, Word};
use super::system::{Equation, OperatorSystem};

/// A parsed system together with the optional data shipped alongside it.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub system: OperatorSystem,
    /// Reference solution basis, possibly involving parameters.
    pub basis: Vec<Poly>,
    /// Operator column identifying the solution space with a module.
    pub frame: Vec<Operator>,
    pub truncate: Option<i64>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Name(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits a lexeme into declared names, longest match first.
fn split_name(lexeme: &str, names: &[String]) -> Option<Vec<String>> {
    if lexeme.is_empty() {
        return Some(Vec::new());
    }
    let mut cands: Vec<&String> = names.iter().filter(|n| lexeme.starts_with(n.as_str())).collect();
    cands.sort_by_key(|n| std::cmp::Reverse(n.len()));
    for c in cands {
        if let Some(mut rest) = split_name(&lexeme[c.len()..], names) {
            rest.insert(0, c.clone());
            return Some(rest);
        }
    }
    None
}

fn tokenize(text: &str, line: usize, col0: usize, names: &[String]) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lex: String = chars[s..i].iter().collect();
            let n = lex
                .parse::<i64>()
                .map_err(|_| perr(line, col, format!("number `{lex}` is too large")))?;
            out.push(Token { tok: Tok::Num(n), col });
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let lex: String = chars[s..i].iter().collect();
            let parts = split_name(&lex, names).ok_or_else(|| perr(line, col, format!("unknown name `{lex}`")))?;
            let mut off = 0;
            for p in parts {
                let len = p.chars().count();
                out.push(Token {
                    tok: Tok::Name(p),
                    col: col + off,
                });
                off += len;
            }
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(perr(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Symbol tables for expression parsing.
struct Scope<'a> {
    coords: &'a [Coordinate],
    params: &'a [String],
    /// Frame fields, or `None` inside field definitions where `D(x)` is used.
    fields: Option<&'a [String]>,
}

impl Scope<'_> {
    fn nvars(&self) -> usize {
        self.coords.len() + self.params.len()
    }

    fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.coords.iter().map(|c| c.name.clone()).collect();
        v.extend(self.params.iter().cloned());
        match self.fields {
            Some(f) => v.extend(f.iter().cloned()),
            None => v.push("D".into()),
        }
        v
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_col: usize,
    scope: &'a Scope<'a>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        perr(self.line, self.col(), msg)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Operator> {
        let mut acc = self.signed()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.product()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn signed(&mut self) -> Result<Operator> {
        if self.peek() == Some(&Tok::Sym('-')) {
            self.pos += 1;
            Ok(self.product()?.neg())
        } else if self.peek() == Some(&Tok::Sym('+')) {
            self.pos += 1;
            self.product()
        } else {
            self.product()
        }
    }

    fn product(&mut self) -> Result<Operator> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    let col = self.col();
                    let rhs = self.power()?;
                    acc = self.mul(acc, rhs, col)?;
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let col = self.col();
                    let rhs = self.power()?;
                    let d = constant_of(&rhs).ok_or_else(|| perr(self.line, col, "can only divide by a number"))?;
                    if d.is_zero() {
                        return Err(perr(self.line, col, "division by zero"));
                    }
                    acc = acc.scale(&Poly::constant(self.scope.nvars(), d.recip()));
                }
                Some(Tok::Name(_)) | Some(Tok::Sym('(')) => {
                    let col = self.col();
                    let rhs = self.power()?;
                    acc = self.mul(acc, rhs, col)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn mul(&self, a: Operator, b: Operator, col: usize) -> Result<Operator> {
        let n = self.scope.coords.len();
        let mut terms = Vec::new();
        for (ca, wa) in &a.terms {
            for (cb, wb) in &b.terms {
                if !wa.is_empty() && cb.terms().any(|(m, _)| m[..n].iter().any(|&e| e > 0)) {
                    return Err(perr(self.line, col, "coefficients must be written before fields"));
                }
                let mut w = wa.clone();
                w.extend(wb.iter().copied());
                terms.push((ca.mul(cb), w));
            }
        }
        Ok(Operator { terms }.normalize())
    }

    fn power(&mut self) -> Result<Operator> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            self.pos += 1;
            let col = self.col();
            let e = match self.peek() {
                Some(Tok::Num(e)) => *e,
                _ => return Err(self.err("expected an integer exponent")),
            };
            self.pos += 1;
            let mut acc = Operator::word(self.scope.nvars(), Word::new());
            for _ in 0..e {
                acc = self.mul(acc, base.clone(), col)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Operator> {
        let nv = self.scope.nvars();
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of expression"))?;
        match tok {
            Tok::Num(k) => {
                self.pos += 1;
                Ok(scalar(Poly::constant(nv, Rat::int(k))))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Name(name) => {
                self.pos += 1;
                if let Some(i) = self.scope.coords.iter().position(|c| c.name == name) {
                    return Ok(scalar(Poly::var(nv, i)));
                }
                if let Some(i) = self.scope.params.iter().position(|p| *p == name) {
                    return Ok(scalar(Poly::var(nv, self.scope.coords.len() + i)));
                }
                match self.scope.fields {
                    Some(fields) => {
                        let i = fields.iter().position(|f| *f == name).expect("tokenizer only yields declared names");
                        Ok(Operator::word(nv, vec![i]))
                    }
                    None => {
                        // `D(x)`, the coordinate derivation.
                        self.expect('(')?;
                        let col = self.col();
                        let k = match self.peek() {
                            Some(Tok::Name(c)) => self.scope.coords.iter().position(|x| x.name == *c),
                            _ => None,
                        }
                        .ok_or_else(|| perr(self.line, col, "expected a coordinate name"))?;
                        self.pos += 1;
                        self.expect(')')?;
                        Ok(Operator::word(nv, vec![k]))
                    }
                }
            }
            Tok::Sym(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }
}

fn scalar(p: Poly) -> Operator {
    Operator {
        terms: vec![(p, Word::new())],
    }
    .normalize()
}

fn constant_of(op: &Operator) -> Option<Rat> {
    match op.terms.as_slice() {
        [] => Some(Rat::ZERO),
        [(c, w)] if w.is_empty() => c.as_constant(),
        _ => None,
    }
}

fn parse_expr(text: &str, line: usize, col0: usize, scope: &Scope) -> Result<Operator> {
    let toks = tokenize(text, line, col0, &scope.names())?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: col0 + text.chars().count(),
        scope,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

fn as_poly(op: Operator, line: usize, col: usize) -> Result<Poly> {
    let mut out: Option<Poly> = None;
    for (c, w) in op.terms {
        if !w.is_empty() {
            return Err(perr(line, col, "expected a polynomial, found a frame field"));
        }
        out = Some(match out {
            None => c,
            Some(p) => p.add(&c),
        });
    }
    out.ok_or_else(|| perr(line, col, "empty polynomial"))
}

/// Parses a polynomial in the variables of `space`.
pub fn parse_poly(space: &ModelSpace, text: &str) -> Result<Poly> {
    let scope = Scope {
        coords: space.coords(),
        params: space.params(),
        fields: Some(&[]),
    };
    let op = parse_expr(text, 1, 1, &scope)?;
    if op.is_zero() {
        return Ok(Poly::zero(space.nvars()));
    }
    as_poly(op, 1, 1)
}

/// Parses an operator expression over the fields of `space`.
pub fn parse_operator(space: &ModelSpace, text: &str) -> Result<Operator> {
    let names: Vec<String> = space.fields().iter().map(|f| f.name.clone()).collect();
    let scope = Scope {
        coords: space.coords(),
        params: space.params(),
        fields: Some(&names),
    };
    parse_expr(text, 1, 1, &scope)
}

fn is_identifier(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_alphabetic() || c == '_') && ch.all(|c| c.is_alphanumeric() || c == '_')
}

pub fn parse_fixture(name: &str, text: &str) -> Result<Fixture> {
    let mut coords: Vec<Coordinate> = Vec::new();
    let mut params: Vec<String> = Vec::new();
    let mut fields: Vec<(String, Vec<Poly>)> = Vec::new();
    let mut space: Option<ModelSpace> = None;
    let mut equations = Vec::new();
    let mut basis = Vec::new();
    let mut frame = Vec::new();
    let mut truncate = None;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = body.len() - trimmed.len();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed.trim_end(), ""));
        let rest_col = indent + kw.len() + 2 + (rest.len() - rest.trim_start().len());
        let rest = rest.trim();
        let declared = |n: &str, coords: &[Coordinate], params: &[String], fields: &[(String, Vec<Poly>)]| {
            coords.iter().any(|c| c.name == n) || params.iter().any(|p| p == n) || fields.iter().any(|f| f.0 == n)
        };
        match kw {
            "coord" | "param" | "field" if space.is_some() => {
                return Err(perr(line, indent + 1, format!("`{kw}` must precede equations, bases and frames")));
            }
            "coord" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 || !is_identifier(parts[0]) {
                    return Err(perr(line, rest_col, "expected `coord NAME WEIGHT`"));
                }
                if declared(parts[0], &coords, &params, &fields) {
                    return Err(perr(line, rest_col, format!("`{}` declared twice", parts[0])));
                }
                let w: i64 = parts[1]
                    .parse()
                    .ok()
                    .filter(|w| *w > 0)
                    .ok_or_else(|| perr(line, rest_col, "weight must be a positive integer"))?;
                coords.push(Coordinate {
                    name: parts[0].to_string(),
                    weight: w,
                });
            }
            "param" => {
                if !is_identifier(rest) {
                    return Err(perr(line, rest_col, "expected `param NAME`"));
                }
                if declared(rest, &coords, &params, &fields) {
                    return Err(perr(line, rest_col, format!("`{rest}` declared twice")));
                }
                params.push(rest.to_string());
            }
            "field" => {
                let (fname, def) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(line, rest_col, "expected `field NAME = EXPR`"))?;
                let fname = fname.trim();
                if !is_identifier(fname) || fname == "D" {
                    return Err(perr(line, rest_col, format!("invalid field name `{fname}`")));
                }
                if declared(fname, &coords, &params, &fields) {
                    return Err(perr(line, rest_col, format!("`{fname}` declared twice")));
                }
                let def_col = rest_col + rest.find('=').unwrap() + 1;
                let scope = Scope {
                    coords: &coords,
                    params: &params,
                    fields: None,
                };
                let op = parse_expr(def, line, def_col, &scope)?;
                let mut coeffs = vec![Poly::zero(scope.nvars()); coords.len()];
                for (c, w) in op.terms {
                    if w.len() != 1 {
                        return Err(perr(line, def_col, "each term of a field must contain exactly one D(...)"));
                    }
                    coeffs[w[0]] = coeffs[w[0]].add(&c);
                }
                fields.push((fname.to_string(), coeffs));
            }
            "eq" | "basis" | "frame" => {
                if space.is_none() {
                    space = Some(
                        ModelSpace::new(coords.clone(), params.clone(), fields.clone())
                            .map_err(|e| perr(line, indent + 1, e.to_string()))?,
                    );
                }
                let sp = space.as_ref().unwrap();
                let names: Vec<String> = sp.fields().iter().map(|f| f.name.clone()).collect();
                let scope = Scope {
                    coords: sp.coords(),
                    params: sp.params(),
                    fields: Some(&names),
                };
                match kw {
                    "eq" => {
                        let (lhs, rhs, rcol) = match rest.split_once('=') {
                            Some((l, r)) => (l, r, rest_col + rest.find('=').unwrap() + 1),
                            None => (rest, "", rest_col + rest.len()),
                        };
                        let lhs = parse_expr(lhs, line, rest_col, &scope)?;
                        let rhs = if rhs.trim().is_empty() {
                            Operator::zero()
                        } else {
                            parse_expr(rhs, line, rcol, &scope)?
                        };
                        if lhs.sub(&rhs).is_zero() {
                            return Err(perr(line, rest_col, "equation is trivial"));
                        }
                        equations.push(Equation { lhs, rhs });
                    }
                    "basis" => {
                        let op = parse_expr(rest, line, rest_col, &scope)?;
                        basis.push(if op.is_zero() {
                            Poly::zero(sp.nvars())
                        } else {
                            as_poly(op, line, rest_col)?
                        });
                    }
                    _ => frame.push(parse_expr(rest, line, rest_col, &scope)?),
                }
            }
            "truncate" => {
                let n: i64 = rest
                    .parse()
                    .ok()
                    .filter(|n| *n >= 0)
                    .ok_or_else(|| perr(line, rest_col, "expected a non-negative integer"))?;
                truncate = Some(n);
            }
            _ => return Err(perr(line, indent + 1, format!("unknown directive `{kw}`"))),
        }
    }
    let space = match space {
        Some(s) => s,
        None => ModelSpace::new(coords, params, fields).map_err(|e| perr(1, 1, e.to_string()))?,
    };
    if equations.is_empty() {
        return Err(perr(1, 1, "no equations"));
    }
    Ok(Fixture {
        name: name.to_string(),
        system: OperatorSystem::new(space, equations),
        basis,
        frame,
        truncate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const HEIS: &str = "coord x 1\ncoord y 1\ncoord z 2\nparam a\n\
        field X = D(x) + 1/2*y*D(z)\nfield Y = D(y) - 1/2*x*D(z)\nfield Z = D(z)\n";

    #[test]
    fn juxtaposition_splits() {
        let f = parse_fixture("t", &format!("{HEIS}eq XYX\neq X^2Y = -XZ\nbasis xy + a/3*x^3\n")).unwrap();
        let s = &f.system.space;
        assert_eq!(f.system.equations[0].lhs.terms[0].1, vec![0, 1, 0]);
        assert_eq!(f.system.orders(), vec![3, 3]);
        let names = s.var_names();
        assert_eq!(f.basis[0].display(&names).to_string(), "x*y + 1/3*x^3*a");
    }

    #[test]
    fn coefficient_order_enforced() {
        let e = parse_fixture("t", &format!("{HEIS}eq X*x\n")).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 8, .. }), "{e:?}");
    }

    #[test]
    fn reports_column() {
        let e = parse_fixture("t", &format!("{HEIS}eq X + Q\n")).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 8,
                col: 8,
                msg: "unknown name `Q`".into()
            }
        );
    }

    #[test]
    fn field_definition() {
        let f = parse_fixture("t", &format!("{HEIS}eq X\n")).unwrap();
        let x = &f.system.space.fields()[0];
        assert_eq!(x.coeffs[2], Poly::var(4, 1).scale(&q(1, 2)));
        assert_eq!(x.weight, 1);
    }

    #[test]
    fn poly_helpers() {
        let f = parse_fixture("t", &format!("{HEIS}eq X\n")).unwrap();
        let p = parse_poly(&f.system.space, "(x+y)^2").unwrap();
        assert_eq!(p.len(), 3);
        let op = parse_operator(&f.system.space, "2ZX + Y^2").unwrap();
        assert_eq!(op.terms.len(), 2);
    }
}
