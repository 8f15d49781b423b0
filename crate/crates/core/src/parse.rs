//! Parser for polynomial expressions in `x` and `y`.
//!
//! Accepts integers, `p/q` via division, `+ - * / ^`, parentheses and
//! implicit multiplication (`2x(x-1)`). Division is only by constants. The
//! result must have degree at most two.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::poly::QuadPoly;
use crate::rational::{int, parse_rational, Rational};

/// Sparse polynomial keyed by `(deg_x, deg_y)`.
#[derive(Debug, Clone, Default)]
struct Sparse(BTreeMap<(u32, u32), Rational>);

const MAX_DEGREE: u32 = 8;

impl Sparse {
    fn constant(c: Rational) -> Self {
        let mut s = Sparse::default();
        s.add_term((0, 0), c);
        s
    }

    fn var(key: (u32, u32)) -> Self {
        let mut s = Sparse::default();
        s.add_term(key, Rational::one());
        s
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        let e = self.0.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&key);
        }
    }

    fn add(mut self, o: Sparse, sign: i64) -> Sparse {
        for (k, c) in o.0 {
            self.add_term(k, c * int(sign));
        }
        self
    }

    fn degree(&self) -> u32 {
        self.0.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    fn mul(&self, o: &Sparse) -> Sparse {
        let mut out = Sparse::default();
        for ((a1, b1), c1) in &self.0 {
            for ((a2, b2), c2) in &o.0 {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    fn as_constant(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => self.0.get(&(0, 0)).cloned(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((col, Tok::Num(digits.parse().expect("ascii digits"))));
                continue;
            }
            'x' => Tok::X,
            'y' => Tok::Y,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Parse {
                    column: col,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Sparse::default().add(self.term()?, -1)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => break,
            };
            self.bump();
            acc = acc.add(self.term()?, sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.checked_mul(&acc, &rhs)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let col = self.col();
                    let rhs = self.unary()?;
                    let c = match rhs.as_constant() {
                        Some(c) if !c.is_zero() => c,
                        Some(_) => {
                            return Err(Error::Parse {
                                column: col,
                                message: "division by zero".into(),
                            })
                        }
                        None => {
                            return Err(Error::Parse {
                                column: col,
                                message: "division by a non-constant".into(),
                            })
                        }
                    };
                    acc = acc.mul(&Sparse::constant(c.recip()));
                }
                Some(Tok::Num(_)) | Some(Tok::X) | Some(Tok::Y) | Some(Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = self.checked_mul(&acc, &rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn checked_mul(&self, a: &Sparse, b: &Sparse) -> Result<Sparse> {
        let out = a.mul(b);
        if out.degree() > MAX_DEGREE {
            return self.err("degree too large");
        }
        Ok(out)
    }

    fn unary(&mut self) -> Result<Sparse> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Sparse::default().add(self.unary()?, -1));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let exp = match self.bump() {
            Some(Tok::Num(e)) => u32::try_from(e).ok().filter(|e| *e <= MAX_DEGREE),
            _ => None,
        };
        let Some(exp) = exp else {
            self.pos -= 1;
            return self.err("expected a small non-negative integer exponent");
        };
        let mut acc = Sparse::constant(Rational::one());
        for _ in 0..exp {
            acc = self.checked_mul(&acc, &base)?;
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Sparse> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.bump();
                Ok(Sparse::constant(Rational::from_integer(v)))
            }
            Some(Tok::X) => {
                self.bump();
                Ok(Sparse::var((1, 0)))
            }
            Some(Tok::Y) => {
                self.bump();
                Ok(Sparse::var((0, 1)))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Some(_) => self.err("expected a number, x, y or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial expression of degree at most two.
pub fn parse_poly(src: &str) -> Result<QuadPoly> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: src.chars().count() + 1,
    };
    let sparse = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    if sparse.degree() > 2 {
        return Err(Error::Parse {
            column: 1,
            message: format!("degree {} exceeds 2", sparse.degree()),
        });
    }
    let get = |k| sparse.0.get(&k).cloned().unwrap_or_else(Rational::zero);
    Ok(QuadPoly::from_coeffs([
        get((2, 0)),
        get((1, 1)),
        get((0, 2)),
        get((1, 0)),
        get((0, 1)),
        get((0, 0)),
    ]))
}

/// Parse six comma-separated rationals in the order `x^2, xy, y^2, x, y, 1`.
pub fn parse_coefficients(src: &str) -> Result<QuadPoly> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 6 {
        return Err(Error::Parse {
            column: 1,
            message: format!("expected 6 comma-separated coefficients, found {}", parts.len()),
        });
    }
    let mut col = 1;
    let mut coeffs = Vec::with_capacity(6);
    for (i, part) in parts.iter().enumerate() {
        let value = parse_rational(part).ok_or_else(|| Error::Parse {
            column: col,
            message: format!("coefficient {} ('{}') is not a rational", i + 1, part.trim()),
        })?;
        coeffs.push(value);
        col += part.chars().count() + 1;
    }
    let arr: [Rational; 6] = coeffs.try_into().expect("six entries");
    Ok(QuadPoly::from_coeffs(arr))
}

/// Either a coefficient tuple (no `x`/`y` present) or an expression.
pub fn parse_poly_spec(src: &str) -> Result<QuadPoly> {
    if src.contains(['x', 'y']) {
        parse_poly(src)
    } else {
        parse_coefficients(src)
    }
}
