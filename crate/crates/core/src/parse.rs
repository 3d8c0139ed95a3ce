//! Text syntax for polynomials and cycles.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := int | int '*' factor ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' int)?
//! var    := 'x' int | 'y' int | 'z[' int ',' int ']'
//! cycle  := '0' | cterm (('+'|'-') cterm)*
//! cterm  := ['-'] [int '*'] '[' poly ']'
//! ```
//!
//! Multiplication must be explicit: `3x0` is rejected. Every polynomial must
//! be homogeneous and use a single variable family.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cycles::Cycle;
use crate::error::{Error, ParseError, Result};
use crate::poly::{Family, Monomial, Polynomial, Var, VariableSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(Family, u32, u32),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    at: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(i) => format!("integer {i}"),
        Tok::Var(..) => "variable".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Open => "'['".into(),
        Tok::Close => "']'".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;

    let digits = |start: usize| -> (usize, &str) {
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        (end, &src[start..end])
    };
    let small = |text: &str, at: usize| -> Result<u32, ParseError> {
        text.parse::<u32>()
            .map_err(|_| ParseError::at(src, at, "variable index too large"))
    };

    while i < bytes.len() {
        let c = bytes[i];
        let at = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'[' => Tok::Open,
            b']' => Tok::Close,
            b'0'..=b'9' => {
                let (end, text) = digits(i);
                i = end;
                out.push(Token {
                    tok: Tok::Int(text.parse().expect("ascii digits")),
                    at,
                });
                continue;
            }
            b'x' | b'y' => {
                let (end, text) = digits(i + 1);
                if text.is_empty() {
                    return Err(ParseError::at(src, i + 1, "expected a variable index"));
                }
                let family = if c == b'x' { Family::X } else { Family::Y };
                let idx = small(text, i + 1)?;
                i = end;
                out.push(Token {
                    tok: Tok::Var(family, idx, 0),
                    at,
                });
                continue;
            }
            b'z' => {
                let expect = |pos: usize, ch: u8, what: &str| -> Result<(), ParseError> {
                    if bytes.get(pos) == Some(&ch) {
                        Ok(())
                    } else {
                        Err(ParseError::at(src, pos, format!("expected {what} in z variable")))
                    }
                };
                expect(i + 1, b'[', "'['")?;
                let (end_i, ti) = digits(i + 2);
                if ti.is_empty() {
                    return Err(ParseError::at(src, i + 2, "expected a row index"));
                }
                expect(end_i, b',', "','")?;
                let (end_j, tj) = digits(end_i + 1);
                if tj.is_empty() {
                    return Err(ParseError::at(src, end_i + 1, "expected a column index"));
                }
                expect(end_j, b']', "']'")?;
                let (zi, zj) = (small(ti, i + 2)?, small(tj, end_i + 1)?);
                i = end_j + 1;
                out.push(Token {
                    tok: Tok::Var(Family::Z, zi, zj),
                    at,
                });
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::at(src, i, format!("unexpected character '{ch}'")));
            }
        };
        i += 1;
        out.push(Token { tok, at });
    }
    out.push(Token {
        tok: Tok::End,
        at: src.len(),
    });
    Ok(out)
}

/// One variable occurrence as written, with its source offset.
#[derive(Clone, Debug)]
struct RawVar {
    family: Family,
    i: u32,
    j: u32,
    exp: u32,
    at: usize,
}

#[derive(Clone, Debug)]
struct RawTerm {
    coeff: BigInt,
    vars: Vec<RawVar>,
    at: usize,
}

impl RawTerm {
    fn degree(&self) -> u32 {
        self.vars.iter().map(|v| v.exp).sum()
    }
}

#[derive(Clone, Debug)]
struct RawPoly {
    terms: Vec<RawTerm>,
    at: usize,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: usize, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.src, at, msg)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        self.error(t.at, format!("expected {expected}, found {}", describe(&t.tok)))
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn poly(&mut self) -> Result<RawPoly, ParseError> {
        let at = self.peek().at;
        let mut terms = Vec::new();
        let mut negative = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            negative = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(RawPoly { terms, at })
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let at = self.peek().at;
        let mut coeff = BigInt::from(1);
        let mut vars = Vec::new();
        match self.peek().tok.clone() {
            Tok::Int(c) => {
                self.bump();
                coeff = c;
                match self.peek().tok {
                    Tok::Star => {
                        self.bump();
                        vars.push(self.factor()?);
                    }
                    Tok::Var(..) => {
                        return Err(self.error(
                            self.peek().at,
                            "explicit '*' required between coefficient and variable",
                        ))
                    }
                    _ => return Ok(RawTerm { coeff, vars, at }),
                }
            }
            Tok::Var(..) => vars.push(self.factor()?),
            _ => return Err(self.unexpected("a term")),
        }
        while self.peek().tok == Tok::Star {
            self.bump();
            vars.push(self.factor()?);
        }
        if let Tok::Var(..) | Tok::Int(_) = self.peek().tok {
            return Err(self.error(self.peek().at, "explicit '*' required between factors"));
        }
        Ok(RawTerm { coeff, vars, at })
    }

    fn factor(&mut self) -> Result<RawVar, ParseError> {
        let t = self.bump();
        let Tok::Var(family, i, j) = t.tok else {
            self.pos -= 1;
            return Err(self.unexpected("a variable"));
        };
        let mut exp = 1;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let e = self.bump();
            let Tok::Int(e) = e.tok else {
                self.pos -= 1;
                return Err(self.unexpected("an exponent"));
            };
            exp = e
                .to_u32()
                .ok_or_else(|| self.error(t.at, "exponent too large"))?;
        }
        Ok(RawVar {
            family,
            i,
            j,
            exp,
            at: t.at,
        })
    }

    /// Multiplicity prefix and bracketed polynomial.
    fn cycle_term(&mut self, mut negative: bool) -> Result<(BigInt, RawPoly), ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            negative = !negative;
        }
        let mut mult = BigInt::from(1);
        if let Tok::Int(k) = self.peek().tok.clone() {
            self.bump();
            mult = k;
            if self.peek().tok != Tok::Star {
                return Err(self.unexpected("'*' after multiplicity"));
            }
            self.bump();
        }
        if self.peek().tok != Tok::Open {
            return Err(self.unexpected("'['"));
        }
        self.bump();
        let poly = self.poly()?;
        if self.peek().tok != Tok::Close {
            return Err(self.unexpected("']'"));
        }
        self.bump();
        if negative {
            mult = -mult;
        }
        Ok((mult, poly))
    }

    fn cycle(&mut self) -> Result<Vec<(BigInt, RawPoly)>, ParseError> {
        let mut out = Vec::new();
        if let Tok::Int(k) = &self.peek().tok {
            if k.is_zero() && self.toks[self.pos + 1].tok == Tok::End {
                self.bump();
                return Ok(out);
            }
        }
        let mut negative = false;
        loop {
            out.push(self.cycle_term(negative)?);
            negative = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(out)
    }

    /// Checks homogeneity and family uniformity; returns `(family, degree,
    /// row bound, column bound)` inferred from the text.
    fn check(&self, poly: &RawPoly) -> Result<(Option<Family>, u32, u32, u32), ParseError> {
        let mut family: Option<Family> = None;
        let (mut rows, mut cols) = (0u32, 0u32);
        let degree = poly.terms[0].degree();
        for term in &poly.terms {
            if term.degree() != degree {
                return Err(self.error(
                    term.at,
                    format!(
                        "inhomogeneous polynomial: term of degree {} after terms of degree {degree}",
                        term.degree()
                    ),
                ));
            }
            for v in &term.vars {
                match family {
                    None => family = Some(v.family),
                    Some(f) if f != v.family => {
                        return Err(self.error(v.at, "cannot mix variable families in one polynomial"))
                    }
                    _ => {}
                }
                rows = rows.max(v.i.saturating_add(1));
                cols = cols.max(v.j.saturating_add(1));
            }
        }
        Ok((family, degree, rows, cols))
    }

    fn lower(&self, poly: &RawPoly, space: VariableSpace) -> Result<Polynomial, ParseError> {
        let (family, degree, _, _) = self.check(poly)?;
        if let Some(f) = family {
            if f != space.family() {
                return Err(self.error(poly.at, format!("expected a polynomial in {space}")));
            }
        }
        let mut out = Polynomial::zero(space, degree);
        for term in &poly.terms {
            let mut vars = Vec::new();
            for v in &term.vars {
                let var = match v.family {
                    Family::Z => Var::z(v.i, v.j),
                    _ => Var::plain(v.i),
                };
                if !space.contains(var) {
                    return Err(self.error(
                        v.at,
                        format!("{} out of bounds for {space}", space.var_name(var)),
                    ));
                }
                vars.extend(std::iter::repeat_n(var, v.exp as usize));
            }
            let m = Polynomial::monomial(space, Monomial::from_vars(vars), term.coeff.clone());
            out = out.try_add(&m).map_err(|e| self.error(term.at, e.to_string()))?;
        }
        Ok(out)
    }

    fn infer_space(
        &self,
        at: usize,
        family: Option<Family>,
        rows: u32,
        cols: u32,
    ) -> Result<VariableSpace, ParseError> {
        VariableSpace::new(family.unwrap_or(Family::X), rows.max(1), cols.max(1))
            .map_err(|e| self.error(at, e.to_string()))
    }
}

/// Parses a polynomial, inferring the smallest space that holds it.
pub fn parse_polynomial(src: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(src)?;
    let raw = p.poly()?;
    p.expect_end()?;
    let (family, _, rows, cols) = p.check(&raw)?;
    let space = p.infer_space(raw.at, family, rows, cols)?;
    p.lower(&raw, space)
}

/// Parses a polynomial that must live in `space`.
pub fn parse_polynomial_in(src: &str, space: VariableSpace) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(src)?;
    let raw = p.poly()?;
    p.expect_end()?;
    p.lower(&raw, space)
}

fn parse_cycle_with(src: &str, space: Option<VariableSpace>) -> Result<Cycle> {
    let mut p = Parser::new(src)?;
    let raw = p.cycle()?;
    p.expect_end()?;
    let space = match space {
        Some(s) => s,
        None => {
            let mut family = None;
            let (mut rows, mut cols) = (0, 0);
            for (_, poly) in &raw {
                let (f, _, r, c) = p.check(poly)?;
                if let (Some(prev), Some(f)) = (family, f) {
                    if prev != f {
                        return Err(p
                            .error(poly.at, "cycle components use different variable families")
                            .into());
                    }
                }
                family = family.or(f);
                rows = rows.max(r);
                cols = cols.max(c);
            }
            p.infer_space(0, family, rows, cols)?
        }
    };
    let mut components = Vec::with_capacity(raw.len());
    for (mult, poly) in &raw {
        let lowered = p.lower(poly, space)?;
        let mult = mult
            .to_i64()
            .ok_or_else(|| Error::from(p.error(poly.at, "multiplicity out of range")))?;
        if lowered.is_zero() || lowered.degree() == 0 {
            return Err(p
                .error(poly.at, "cycle components must be nonzero of degree at least 1")
                .into());
        }
        if mult != 0 {
            components.push((lowered, mult));
        }
    }
    Cycle::from_components(space, components)
}

/// Parses `2*[x0^2 - 3*x1*x2] + -1*[x0]`, inferring the space.
pub fn parse_cycle(src: &str) -> Result<Cycle> {
    parse_cycle_with(src, None)
}

pub fn parse_cycle_in(src: &str, space: VariableSpace) -> Result<Cycle> {
    parse_cycle_with(src, Some(space))
}
