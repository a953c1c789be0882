//! Expression grammar (whitespace-insensitive):
//!
//! ```text
//! expr  := term (("+"|"-") term)*
//! term  := unary (("*"|"/") unary)*
//! unary := "-" unary | pow
//! pow   := atom ("^" integer)?
//! atom  := rational | ident | ident "(" expr ")" | "sqrt" "(" expr ")" | "(" expr ")"
//! ```
//!
//! Opaque derivatives print and parse as `f__k(u)` for the k-th derivative.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Q;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Num(Q),
    Ident(String),
    Call(String, Box<Ast>),
    Sqrt(Box<Ast>),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit()) {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &text[start..i];
            let mut value = if int_part.is_empty() {
                Q::zero()
            } else {
                Q::from_integer(int_part.parse::<BigInt>().map_err(|e| Error::Syntax {
                    pos: start,
                    msg: e.to_string(),
                })?)
            };
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let fs = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let frac = &text[fs..i];
                if !frac.is_empty() {
                    let n: BigInt = frac.parse().map_err(|_| Error::Syntax {
                        pos: fs,
                        msg: "bad decimal".into(),
                    })?;
                    let d = num_traits::pow(BigInt::from(10), frac.len());
                    value += Q::new(n, d);
                }
            }
            out.push((start, Tok::Num(value)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.here(),
            msg: msg.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
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
            self.err(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.pow()
    }

    fn pow(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(q)) if q.is_integer() => {
                self.pos += 1;
                let e: i64 = q
                    .numer()
                    .try_into()
                    .or_else(|_| self.err("exponent too large"))?;
                Ok(Ast::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => self.err("expected integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Ast::Num(q))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let arg = self.expr()?;
                    self.expect(')')?;
                    if name == "sqrt" {
                        Ok(Ast::Sqrt(Box::new(arg)))
                    } else {
                        Ok(Ast::Call(name, Box::new(arg)))
                    }
                } else {
                    Ok(Ast::Ident(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into an syntax tree without resolving identifiers.
pub fn parse_ast(text: &str) -> Result<Ast> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let a = parse_ast("1 + 2*x^2").unwrap();
        assert!(matches!(a, Ast::Add(_, _)));
        let b = parse_ast("-x^2").unwrap();
        assert!(matches!(b, Ast::Neg(_)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_ast("x1 + * 2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_ast("(x1").is_err());
        assert!(parse_ast("x1 $").is_err());
        assert!(parse_ast("x^y").is_err());
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_ast("0.25").unwrap(), Ast::Num(Q::new(1.into(), 4.into())));
    }
}
