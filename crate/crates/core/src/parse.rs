//! Text input for polynomials over `F_q`.
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor (['*'] factor)*
//! factor  := primary ['^' uint]
//! primary := uint | 't' | 'x' | 'u' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. `u` is the generator of an extension field and is
//! rejected over prime fields. Integer literals must be below `p`. The
//! canonical output of [`crate::BiPoly`]'s `Display` (for example
//! `x^2 + (t+1)*x + t^3`) is accepted.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::UniPoly;

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u64 = 4096;

/// Which polynomial variables an input may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vars {
    /// Constants only (field elements).
    None,
    /// `t`.
    T,
    /// `t` and `x`.
    TX,
}

impl Vars {
    fn allows(self, name: char) -> bool {
        match name {
            't' => matches!(self, Vars::T | Vars::TX),
            'x' => matches!(self, Vars::TX),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Var(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().expect("in bounds");
        let start = i;
        i += c.len_utf8();
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => continue,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let mut v: u64 = c as u64 - '0' as u64;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or_else(|| Error::Syntax {
                            pos: start,
                            msg: "integer literal too large".to_string(),
                        })?;
                    i += 1;
                }
                Tok::Int(v)
            }
            c if c.is_alphabetic() => {
                if i < bytes.len() && text[i..].starts_with(|n: char| n.is_alphanumeric()) {
                    let end = text[start..]
                        .find(|n: char| !n.is_alphanumeric())
                        .map_or(text.len(), |e| start + e);
                    return Err(Error::UnknownVariable {
                        name: text[start..end].to_string(),
                        pos: start,
                    });
                }
                Tok::Var(c)
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

/// Intermediate value: `gammas[j]` is the coefficient of `x^j`.
#[derive(Clone)]
struct Value {
    gammas: Vec<UniPoly>,
}

impl Value {
    fn constant(p: UniPoly) -> Self {
        Self { gammas: vec![p] }
    }

    fn trimmed(mut self) -> Self {
        while self.gammas.len() > 1 && self.gammas.last().is_some_and(|g| g.is_zero()) {
            self.gammas.pop();
        }
        self
    }

    fn add(&self, other: &Self, field: &Field) -> Self {
        let n = self.gammas.len().max(other.gammas.len());
        let zero = UniPoly::zero(field);
        let gammas = (0..n)
            .map(|j| {
                let a = self.gammas.get(j).unwrap_or(&zero);
                let b = other.gammas.get(j).unwrap_or(&zero);
                a.add(b)
            })
            .collect();
        Self { gammas }.trimmed()
    }

    fn neg(&self) -> Self {
        Self {
            gammas: self.gammas.iter().map(UniPoly::neg).collect(),
        }
    }

    fn mul(&self, other: &Self, field: &Field) -> Self {
        let mut gammas = vec![UniPoly::zero(field); self.gammas.len() + other.gammas.len() - 1];
        for (i, a) in self.gammas.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.gammas.iter().enumerate() {
                gammas[i + j] = gammas[i + j].add(&a.mul(b));
            }
        }
        Self { gammas }.trimmed()
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    field: &'a Field,
    vars: Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn syntax<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Value> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs, self.field);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs.neg(), self.field);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs, self.field);
                }
                Some(Tok::Int(_) | Tok::Var(_) | Tok::LParen) => {
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs, self.field);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.peek() {
            Some(&Tok::Int(e)) => e,
            _ => return self.syntax("expected an unsigned exponent after '^'"),
        };
        if e > MAX_EXPONENT {
            return self.syntax("exponent too large");
        }
        self.pos += 1;
        let mut acc = Value::constant(UniPoly::one(self.field));
        for _ in 0..e {
            acc = acc.mul(&base, self.field);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Value> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return self.syntax("unexpected end of input");
        };
        self.pos += 1;
        let field = self.field;
        match tok {
            Tok::Int(v) => {
                if v >= field.p() {
                    return Err(Error::CoefficientOutOfField {
                        pos: at,
                        msg: format!("integer {v} is not below p = {}", field.p()),
                    });
                }
                Ok(Value::constant(UniPoly::constant(field, field.from_u64(v))))
            }
            Tok::Var('u') => match field.generator() {
                Some(g) => Ok(Value::constant(UniPoly::constant(field, g))),
                None => Err(Error::CoefficientOutOfField {
                    pos: at,
                    msg: format!("'u' is not defined over the prime field F_{}", field.p()),
                }),
            },
            Tok::Var(c) if self.vars.allows(c) => {
                if c == 't' {
                    Ok(Value::constant(UniPoly::var(field)))
                } else {
                    Ok(Value {
                        gammas: vec![UniPoly::zero(field), UniPoly::one(field)],
                    })
                }
            }
            Tok::Var(c) => Err(Error::UnknownVariable {
                name: c.to_string(),
                pos: at,
            }),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.syntax("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                self.syntax("expected a number, variable or '('")
            }
        }
    }
}

fn parse_value(text: &str, field: &Field, vars: Vars) -> Result<Value> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        field,
        vars,
    };
    let v = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(v)
}

/// Parses a polynomial in `t` and `x` into `F_q[t][x]`.
pub fn parse_bipoly(text: &str, field: &Field) -> Result<BiPoly> {
    let v = parse_value(text, field, Vars::TX)?;
    Ok(BiPoly::from_gammas(field, v.gammas))
}

/// Parses a polynomial in `t`.
pub fn parse_unipoly(text: &str, field: &Field) -> Result<UniPoly> {
    let mut v = parse_value(text, field, Vars::T)?;
    Ok(v.gammas.swap_remove(0))
}

/// Parses a field element: an integer below `p` or an expression in `u`.
pub fn parse_elem(text: &str, field: &Field) -> Result<FieldElem> {
    let v = parse_value(text, field, Vars::None)?;
    Ok(v.gammas[0].coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_squared_minus_t() {
        let f = Field::prime(5).unwrap();
        let b = parse_bipoly("x^2 - t", &f).unwrap();
        assert_eq!(b.deg_x(), Ok(2));
        assert_eq!(b.gamma(0), UniPoly::from_ints(&f, &[0, 4]));
        assert!(b.gamma(1).is_zero());
        assert!(b.gamma(2).is_one());
    }

    #[test]
    fn content_example_text() {
        let f = Field::prime(5).unwrap();
        let b = parse_bipoly("t^2*x", &f).unwrap();
        assert_eq!(b.gamma(1), UniPoly::from_ints(&f, &[0, 0, 1]));
        assert!(b.gamma(0).is_zero());
    }

    #[test]
    fn unknown_variable() {
        let f = Field::prime(5).unwrap();
        assert_eq!(
            parse_bipoly("x + y", &f).unwrap_err(),
            Error::UnknownVariable {
                name: "y".into(),
                pos: 4
            }
        );
        assert!(matches!(
            parse_unipoly("t + x", &f),
            Err(Error::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_bipoly("xy", &f),
            Err(Error::UnknownVariable { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let f = Field::prime(5).unwrap();
        assert_eq!(
            parse_bipoly("x^", &f).unwrap_err(),
            Error::Syntax {
                pos: 2,
                msg: "expected an unsigned exponent after '^'".into()
            }
        );
        assert!(matches!(parse_bipoly("(x + 1", &f), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_bipoly("x + ", &f), Err(Error::Syntax { .. })));
        assert!(matches!(parse_bipoly("x $ 1", &f), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_bipoly("x )", &f), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn coefficients_out_of_field() {
        let f = Field::prime(5).unwrap();
        assert!(matches!(
            parse_bipoly("7*x", &f),
            Err(Error::CoefficientOutOfField { pos: 0, .. })
        ));
        assert!(matches!(
            parse_bipoly("u*x", &f),
            Err(Error::CoefficientOutOfField { .. })
        ));
    }

    #[test]
    fn extension_coefficients() {
        let f = Field::new(2, 2).unwrap();
        let e = parse_elem("u + 1", &f).unwrap();
        assert_eq!(f.format_elem(e), "u+1");
        assert_eq!(parse_elem("u^2", &f).unwrap(), e);
        let b = parse_bipoly("(u+1)*x + u*t", &f).unwrap();
        assert_eq!(b.gamma(1), UniPoly::constant(&f, e));
    }

    #[test]
    fn implicit_products_and_powers() {
        let f = Field::prime(7).unwrap();
        let a = parse_bipoly("2t x^2 + (x - t)^2", &f).unwrap();
        let b = parse_bipoly("2*t*x^2 + x^2 - 2*t*x + t^2", &f).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_unipoly("-t + 3", &f).unwrap(), UniPoly::from_ints(&f, &[3, -1]));
    }
}
