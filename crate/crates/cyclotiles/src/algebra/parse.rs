//! Text format for polynomials.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/")? unary)*      juxtaposition multiplies
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" int)?                   int may be negative
//! atom   := integer | x | y | z | i | zeta(n) | "(" expr ")"
//! ```
//!
//! Division is only allowed by a nonzero constant.

use super::cyclotomic::CyclotomicElement;
use super::sparse::{SparsePoly, VAR_NAMES};
use super::AlgebraError;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].parse().unwrap())));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            other => {
                return Err(AlgebraError::Parse {
                    position: start,
                    message: format!("unexpected character '{}'", other),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse {
            position: self.here(),
            message: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), AlgebraError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {:?}", t))
        }
    }

    fn expr(&mut self) -> Result<SparsePoly, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    let c =
                        d.constant_value()
                            .filter(|c| !c.is_zero())
                            .ok_or(AlgebraError::Parse {
                                position: at,
                                message: "division only by a nonzero constant".into(),
                            })?;
                    acc = acc.scale(&c.inv().unwrap());
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SparsePoly, AlgebraError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn int_exponent(&mut self) -> Result<i64, AlgebraError> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some(&Tok::Minus);
        if neg {
            self.pos += 1;
        }
        let v = match self.peek() {
            Some(Tok::Int(n)) => {
                let v: i64 = n.try_into().map_err(|_| AlgebraError::Parse {
                    position: self.here(),
                    message: "exponent too large".into(),
                })?;
                self.pos += 1;
                v
            }
            _ => return self.err("expected integer exponent"),
        };
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<SparsePoly, AlgebraError> {
        let at = self.here();
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.int_exponent()?;
            if e >= 0 {
                return Ok(base.pow(e as u32));
            }
            if base.is_monomial() {
                let (exp, c) = base.leading().map(|(e, c)| (*e, c.clone())).unwrap();
                let inv = c.inv().unwrap().pow((-e) as u64);
                return Ok(SparsePoly::monomial(self.nvars, exp.map(|k| k * e), inv));
            }
            return Err(AlgebraError::Parse {
                position: at,
                message: "negative exponent needs a monomial base".into(),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly, AlgebraError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(SparsePoly::constant(
                    self.nvars,
                    CyclotomicElement::from_bigint(n),
                ))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "zeta" {
                    self.expect(Tok::LParen)?;
                    let n = match self.peek() {
                        Some(Tok::Int(n)) if n > &BigInt::from(0) => {
                            let v: u64 = n.try_into().map_err(|_| AlgebraError::Parse {
                                position: self.here(),
                                message: "order too large".into(),
                            })?;
                            self.pos += 1;
                            v
                        }
                        _ => return self.err("expected positive integer order"),
                    };
                    self.expect(Tok::RParen)?;
                    return Ok(SparsePoly::constant(
                        self.nvars,
                        CyclotomicElement::zeta_pow(n, 1),
                    ));
                }
                if name == "i" {
                    return Ok(SparsePoly::constant(
                        self.nvars,
                        CyclotomicElement::zeta_pow(4, 1),
                    ));
                }
                match VAR_NAMES.iter().position(|v| *v == name) {
                    Some(k) if k < self.nvars => Ok(SparsePoly::var(self.nvars, k)),
                    Some(_) => Err(AlgebraError::Parse {
                        position: at,
                        message: format!(
                            "variable '{}' not allowed with {} variable(s)",
                            name, self.nvars
                        ),
                    }),
                    None => Err(AlgebraError::Parse {
                        position: at,
                        message: format!("unknown identifier '{}'", name),
                    }),
                }
            }
            Some(t) => self.err(format!("unexpected token {:?}", t)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial in the first `nvars` of x, y, z.
pub fn parse_polynomial(s: &str, nvars: usize) -> Result<SparsePoly, AlgebraError> {
    if !(1..=3).contains(&nvars) {
        return Err(AlgebraError::Parse {
            position: 0,
            message: "number of variables must be 1, 2 or 3".into(),
        });
    }
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse {
            position: 0,
            message: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
        nvars,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
