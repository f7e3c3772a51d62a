//! Input-document parsing: named matrices over a small expression grammar,
//! optional degree-bound and Galois-generator blocks.
//!
//! Matrix entries are expressions over integers, `x`, `+ - * /`, integer
//! exponents `^`, and parentheses; juxtaposition like `2x` or `3(x-1)`
//! multiplies. Floating literals are rejected by construction (the lexer has
//! no float token).

use crate::algebra::{MatRF, Poly, Rat, RatFn};
use crate::closedform::{GaloisGen, ParamPoly, ParamSym};
use crate::ratsol::DegreeBounds;
use num_bigint::BigInt;
use std::collections::BTreeMap;

use super::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Equals,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Arrow,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, CliError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&'.') {
                    return Err(CliError::Syntax {
                        line: tline,
                        col: tcol,
                        msg: "floating-point literals are not part of the grammar".into(),
                    });
                }
                out.push(Spanned {
                    tok: Tok::Int(s.parse().expect("digit string")),
                    line: tline,
                    col: tcol,
                });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    line: tline,
                    col: tcol,
                });
            }
            _ => {
                let c = bump(&mut chars);
                let tok = match c {
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    '=' => Tok::Equals,
                    '+' => Tok::Plus,
                    '-' => {
                        if chars.peek() == Some(&'>') {
                            bump(&mut chars);
                            Tok::Arrow
                        } else {
                            Tok::Minus
                        }
                    }
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    other => {
                        return Err(CliError::Syntax {
                            line: tline,
                            col: tcol,
                            msg: format!("unexpected character '{}'", other),
                        })
                    }
                };
                out.push(Spanned {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> CliError {
        let (line, col) = self.here();
        CliError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), CliError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {}", what)))
        }
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<RatFn, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary (('*'|'/') unary | juxtaposed unary)*
    fn term(&mut self) -> Result<RatFn, CliError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(Tok::Star) {
                acc = &acc * &self.unary()?;
            } else if self.eat(Tok::Slash) {
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).map_err(|_| self.err("division by zero"))?;
            } else {
                // implicit multiplication: 2x, 3(x-1), x(x+1)
                match self.peek() {
                    Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                        acc = &acc * &self.unary()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }
    }

    fn unary(&mut self) -> Result<RatFn, CliError> {
        if self.eat(Tok::Minus) {
            Ok(-&self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RatFn, CliError> {
        let base = self.atom()?;
        if self.eat(Tok::Caret) {
            let e = self.signed_int("integer exponent")?;
            base.pow(e).map_err(|_| self.err("zero raised to a negative power"))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFn, CliError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(RatFn::constant(Rat::from_bigint(n))),
            Some(Tok::Ident(id)) if id == "x" => Ok(RatFn::x()),
            Some(Tok::Ident(id)) => {
                self.pos -= 1;
                Err(self.err(format!("unknown symbol '{}' in expression", id)))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "closing ')'")?;
                Ok(e)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err("expected integer, 'x' or '('"))
            }
        }
    }

    /// `k`, `-k`, `(k)`, or `(-k)`.
    fn signed_int(&mut self, what: &str) -> Result<i64, CliError> {
        let parens = self.eat(Tok::LParen);
        let neg = self.eat(Tok::Minus);
        let Some(Tok::Int(n)) = self.next() else {
            return Err(self.err(format!("expected {}", what)));
        };
        if parens {
            self.expect(Tok::RParen, "closing ')'")?;
        }
        let v = i64::try_from(n).map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// A rational literal, optionally signed and parenthesized: `1/2`, `-3`.
    fn rational(&mut self) -> Result<Rat, CliError> {
        let parens = self.eat(Tok::LParen);
        let neg = self.eat(Tok::Minus);
        let Some(Tok::Int(num)) = self.next() else {
            return Err(self.err("expected a rational number"));
        };
        let mut r = Rat::from_bigint(num);
        if self.eat(Tok::Slash) {
            let Some(Tok::Int(den)) = self.next() else {
                return Err(self.err("expected denominator"));
            };
            if den == BigInt::from(0) {
                return Err(self.err("zero denominator"));
            }
            r = &r / &Rat::from_bigint(den);
        }
        if parens {
            self.expect(Tok::RParen, "closing ')'")?;
        }
        Ok(if neg { -r } else { r })
    }

    // matrix := '[' row (',' row)* ']' with row := '[' expr (',' expr)* ']'
    fn matrix(&mut self) -> Result<MatRF, CliError> {
        self.expect(Tok::LBracket, "'['")?;
        let mut rows: Vec<Vec<RatFn>> = Vec::new();
        loop {
            self.expect(Tok::LBracket, "'[' starting a row")?;
            let mut row = Vec::new();
            loop {
                row.push(self.expr()?);
                if !self.eat(Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RBracket, "']' ending a row")?;
            rows.push(row);
            if !self.eat(Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket, "']' ending the matrix")?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(self.err(format!(
                "inconsistent row length: expected {} entries per row",
                n
            )));
        }
        MatRF::from_rows(rows).map_err(|e| self.err(e.to_string()))
    }

    /// Parses `'(' expr ')'` and extracts the point of a monic linear base
    /// `x - a`; used for power bases and log arguments.
    fn linear_point(&mut self) -> Result<Rat, CliError> {
        self.expect(Tok::LParen, "'('")?;
        let e = self.expr()?;
        self.expect(Tok::RParen, "')'")?;
        let Some(p) = as_poly(&e) else {
            return Err(self.err("expected a polynomial in x"));
        };
        if p.degree() != Some(1) || !p.leading().unwrap().is_one() {
            return Err(self.err("expected a monic linear expression x - a"));
        }
        Ok(-&p.coeff(0))
    }

    /// A parameter value: `[-]rat ['*' name['^' k]]` or `[-]name['^' k]`.
    /// Names `zeta<m>` are cyclotomic of order m; other names are formal.
    fn param_value(&mut self) -> Result<ParamPoly, CliError> {
        let neg = self.eat(Tok::Minus);
        let mut coeff = Rat::one();
        let mut have_coeff = false;
        if matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::LParen)) {
            let save = self.pos;
            match self.rational() {
                Ok(r) => {
                    coeff = r;
                    have_coeff = true;
                }
                Err(_) => self.pos = save,
            }
        }
        if have_coeff && !self.eat(Tok::Star) {
            let r = if neg { -coeff } else { coeff };
            return Ok(ParamPoly::from_rat(r));
        }
        let mut poly = ParamPoly::from_rat(coeff);
        if let Some(Tok::Ident(name)) = self.peek().cloned() {
            self.pos += 1;
            let mut exp = 1u32;
            if self.eat(Tok::Caret) {
                let k = self.signed_int("parameter exponent")?;
                if k < 0 {
                    return Err(self.err("negative parameter exponents are not supported"));
                }
                exp = k as u32;
            }
            let sym = match name.strip_prefix("zeta").and_then(|s| s.parse::<u32>().ok()) {
                Some(m) if m >= 1 => ParamSym::zeta(m),
                _ => ParamSym::formal(name),
            };
            let mono = crate::closedform::Monomial::one().times(&sym, exp);
            poly = &ParamPoly::monomial(mono, Rat::one()) * &poly;
        } else if !have_coeff {
            return Err(self.err("expected a rational or parameter name"));
        }
        Ok(if neg { -&poly } else { poly })
    }
}

fn as_poly(f: &RatFn) -> Option<Poly> {
    f.is_polynomial().then(|| f.num().clone())
}

/// A parsed input document: named matrices, optional user bounds, optional
/// Galois generator tables (in declaration order).
#[derive(Clone, Debug, Default)]
pub struct InputDocument {
    pub matrices: BTreeMap<String, MatRF>,
    pub bounds: Option<DegreeBounds>,
    pub galois: Vec<GaloisGen>,
}

impl InputDocument {
    pub fn matrix(&self, name: &str) -> Result<&MatRF, CliError> {
        self.matrices
            .get(name)
            .ok_or_else(|| CliError::Input(format!("matrix '{}' is not declared", name)))
    }
}

/// Parses one matrix literal (the `parse_matrix` entry point).
pub fn parse_matrix(text: &str) -> Result<MatRF, CliError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let m = p.matrix()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after matrix"));
    }
    Ok(m)
}

/// Parses a full input document.
pub fn parse_document(text: &str) -> Result<InputDocument, CliError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let mut doc = InputDocument::default();
    while let Some(tok) = p.peek().cloned() {
        match tok {
            Tok::Ident(kw) if kw == "matrix" => {
                p.pos += 1;
                let Some(Tok::Ident(name)) = p.next() else {
                    return Err(p.err("expected a matrix name"));
                };
                p.expect(Tok::Equals, "'='")?;
                let m = p.matrix()?;
                if doc.matrices.insert(name.clone(), m).is_some() {
                    return Err(CliError::Input(format!(
                        "matrix '{}' declared twice",
                        name
                    )));
                }
            }
            Tok::Ident(kw) if kw == "bounds" => {
                p.pos += 1;
                if doc.bounds.is_some() {
                    return Err(CliError::Input("bounds block declared twice".into()));
                }
                doc.bounds = Some(parse_bounds_block(&mut p)?);
            }
            Tok::Ident(kw) if kw == "galois" => {
                p.pos += 1;
                let Some(Tok::Ident(name)) = p.next() else {
                    return Err(p.err("expected a generator name"));
                };
                if doc.galois.iter().any(|g| g.name() == name) {
                    return Err(CliError::Input(format!(
                        "generator '{}' declared twice",
                        name
                    )));
                }
                doc.galois.push(parse_galois_block(&mut p, name)?);
            }
            _ => return Err(p.err("expected 'matrix', 'bounds' or 'galois'")),
        }
    }
    Ok(doc)
}

fn parse_bounds_block(p: &mut Parser) -> Result<DegreeBounds, CliError> {
    p.expect(Tok::LBrace, "'{'")?;
    let mut pole_orders: BTreeMap<Poly, u32> = BTreeMap::new();
    let mut numerator: Option<u32> = None;
    loop {
        match p.next() {
            Some(Tok::RBrace) => break,
            Some(Tok::Ident(kw)) if kw == "pole" => {
                let e = p.expr()?;
                let Some(factor) = as_poly(&e) else {
                    return Err(p.err("pole factor must be a polynomial"));
                };
                if factor.is_constant() {
                    return Err(p.err("pole factor must be nonconstant"));
                }
                p.expect(Tok::Colon, "':'")?;
                let k = p.signed_int("pole order")?;
                if k < 0 {
                    return Err(p.err("pole order must be nonnegative"));
                }
                pole_orders.insert(factor.monic(), k as u32);
            }
            Some(Tok::Ident(kw)) if kw == "numerator" => {
                p.expect(Tok::Colon, "':'")?;
                let k = p.signed_int("numerator degree")?;
                if k < 0 {
                    return Err(p.err("numerator degree must be nonnegative"));
                }
                numerator = Some(k as u32);
            }
            _ => return Err(p.err("expected 'pole', 'numerator' or '}'")),
        }
    }
    let numerator_degree = numerator
        .ok_or_else(|| CliError::Input("bounds block needs a 'numerator:' entry".into()))?;
    Ok(DegreeBounds::user(pole_orders, numerator_degree))
}

fn parse_galois_block(p: &mut Parser, name: String) -> Result<GaloisGen, CliError> {
    p.expect(Tok::LBrace, "'{'")?;
    let mut gen = GaloisGen::new(name);
    loop {
        match p.next() {
            Some(Tok::RBrace) => break,
            Some(Tok::Ident(kw)) if kw == "power" => {
                let alpha = p.linear_point()?;
                p.expect(Tok::Caret, "'^'")?;
                p.expect(Tok::LParen, "'('")?;
                let e = p.rational()?;
                p.expect(Tok::RParen, "')'")?;
                p.expect(Tok::Arrow, "'->'")?;
                let mu = p.param_value()?;
                gen = gen
                    .with_power(alpha, e, mu)
                    .map_err(|e| CliError::Input(e.to_string()))?;
            }
            Some(Tok::Ident(kw)) if kw == "exp" => {
                p.expect(Tok::LParen, "'('")?;
                let r = p.expr()?;
                p.expect(Tok::RParen, "')'")?;
                p.expect(Tok::Arrow, "'->'")?;
                let chi = p.param_value()?;
                gen = gen
                    .with_exp(r, chi)
                    .map_err(|e| CliError::Input(e.to_string()))?;
            }
            Some(Tok::Ident(kw)) if kw == "log" => {
                let beta = p.linear_point()?;
                p.expect(Tok::Arrow, "'->'")?;
                let c = p.param_value()?;
                gen = gen.with_log(beta, c);
            }
            _ => return Err(p.err("expected 'power', 'exp', 'log' or '}'")),
        }
    }
    Ok(gen)
}
