//! Text syntax for polynomials, e.g. `3*t^32 - 10*t^33`, `(1+u)^2*(1+v)^2`,
//! `1/2*q - a1^-1*z`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::monomial::{Variable, MAX_GENUS};
use super::poly::LaurentPoly;
use crate::Error;

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(syntax(format!("trailing input in {s:?}")));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(Variable),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn syntax(msg: String) -> Error {
    Error::InvalidParameter(format!("polynomial syntax: {msg}"))
}

fn tokenize(s: &str) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("ascii digits")));
            }
            'a' => {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let idx: usize = digits
                    .parse()
                    .map_err(|_| syntax(format!("bad Weil variable in {s:?}")))?;
                if !(1..=MAX_GENUS).contains(&idx) {
                    return Err(syntax(format!("Weil index {idx} out of range")));
                }
                out.push(Token::Var(Variable::weil(idx)));
            }
            'q' | 'z' | 't' | 'u' | 'v' | 'T' => {
                out.push(Token::Var(match c {
                    'q' => Variable::Q,
                    'z' => Variable::Z,
                    't' => Variable::T,
                    'u' => Variable::U,
                    'v' => Variable::V,
                    _ => Variable::Formal,
                }));
                i += 1;
            }
            other => return Err(syntax(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<LaurentPoly, Error> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := power ('*'? power)*
    fn term(&mut self) -> Result<LaurentPoly, Error> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(Token::Var(_)) | Some(Token::Open) | Some(Token::Int(_)) => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // power := atom ['^' ['-'] int]
    fn power(&mut self) -> Result<LaurentPoly, Error> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: u32 = match self.next() {
            Some(Token::Int(n)) => n
                .try_into()
                .map_err(|_| syntax("exponent too large".into()))?,
            _ => return Err(syntax("expected exponent".into())),
        };
        if !negative {
            return Ok(base.pow(e));
        }
        match base.terms() {
            [(m, c)] => Ok(LaurentPoly::monomial(
                m.pow(-(e as i32)),
                num_traits::pow(c.recip(), e as usize),
            )),
            _ => Err(syntax("negative exponents apply to monomials only".into())),
        }
    }

    // atom := int ['/' int] | var | '(' expr ')'
    fn atom(&mut self) -> Result<LaurentPoly, Error> {
        match self.next() {
            Some(Token::Int(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Int(d)) if d != BigInt::from(0) => {
                            Ok(LaurentPoly::constant(BigRational::new(n, d)))
                        }
                        _ => Err(syntax("expected nonzero denominator".into())),
                    }
                } else {
                    Ok(LaurentPoly::constant(BigRational::from_integer(n)))
                }
            }
            Some(Token::Var(v)) => Ok(LaurentPoly::var(v)),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(syntax("unbalanced parenthesis".into())),
                }
            }
            other => Err(syntax(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Monomial;

    #[test]
    fn parses_rational_laurent_terms() {
        let p: LaurentPoly = "1/2*q - a1^-1*z + 3".parse().unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(
            p.coeff(&Monomial::from_pairs(&[
                (Variable::weil(1), -1),
                (Variable::Z, 1)
            ])),
            BigRational::from_integer((-1).into())
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["3*t^32 - 10*t^33", "-1 + u*v", "1/3*q^-2*a2 + z"] {
            let p: LaurentPoly = s.parse().unwrap();
            let again: LaurentPoly = p.to_string().parse().unwrap();
            assert_eq!(p, again);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("(t + 1".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
        assert!("(1+t)^-1".parse::<LaurentPoly>().is_err());
    }
}
