//! Expression parser for input files.
//!
//! Grammar: integer and rational literals, declared symbols, `+ - * / ^`
//! and parentheses. `/` builds rational functions; `^` takes a nonnegative
//! integer exponent.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::symbol::Vars;
use super::{Error, Result};

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Sym(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn next_tok(&mut self) -> Result<Tok> {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        let Some(c) = self.peek_char() else {
            return Ok(Tok::End);
        };
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .peek_char()
                    .map(|c| c.is_ascii_digit())
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                return Ok(Tok::Num(self.src[start..self.pos].parse().unwrap()));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek_char()
                    .map(|c| c.is_alphanumeric() || c == '_')
                    .unwrap_or(false)
                {
                    self.pos += c.len_utf8();
                }
                return Ok(Tok::Sym(self.src[start..self.pos].to_string()));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character '{c}' at offset {}",
                    self.pos
                )))
            }
        };
        self.pos += 1;
        Ok(tok)
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    cur: Tok,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: &'a Vars) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let cur = lexer.next_tok()?;
        Ok(Parser { lexer, cur, vars })
    }

    fn bump(&mut self) -> Result<()> {
        self.cur = self.lexer.next_tok()?;
        Ok(())
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.cur {
                Tok::Plus => {
                    self.bump()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.cur {
                Tok::Star => {
                    self.bump()?;
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump()?;
                    acc = acc.div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.cur {
            Tok::Minus => {
                self.bump()?;
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.cur == Tok::Caret {
            self.bump()?;
            let Tok::Num(ref n) = self.cur else {
                return Err(Error::Parse("exponent must be a nonnegative integer".into()));
            };
            let e: u32 = n
                .to_string()
                .parse()
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            self.bump()?;
            return base.pow(e as i64);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.cur.clone() {
            Tok::Num(n) => {
                self.bump()?;
                Ok(RatFunc::from_rational(BigRational::from_integer(n)))
            }
            Tok::Sym(name) => {
                self.bump()?;
                let s = name.as_str().into();
                if !self.vars.contains(&s) {
                    return Err(Error::Parse(format!("undeclared symbol '{name}'")));
                }
                Ok(RatFunc::from_poly(MultiPoly::var(self.vars, &s)))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.cur != Tok::RParen {
                    return Err(Error::Parse("expected ')'".into()));
                }
                self.bump()?;
                Ok(inner)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parse an expression over the declared variables into a rational function.
pub fn parse_ratfunc(src: &str, vars: &Vars) -> Result<RatFunc> {
    let mut p = Parser::new(src, vars)?;
    let r = p.expr()?;
    if p.cur != Tok::End {
        return Err(Error::Parse(format!("trailing input in '{src}'")));
    }
    Ok(r)
}

/// Parse an expression that must be polynomial.
pub fn parse_poly(src: &str, vars: &Vars) -> Result<MultiPoly> {
    let r = parse_ratfunc(src, vars)?;
    if !r.is_polynomial() {
        return Err(Error::Parse(format!("'{src}' is not a polynomial")));
    }
    Ok(r.num().clone().aligned_to(vars))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_planes() {
        let vars = Vars::from(["x", "y", "z", "t", "A0", "A1"]);
        let p = parse_poly("A0*x + A1*y + (-A0 + A1)*z + A1*t", &vars).unwrap();
        assert_eq!(p.degree_in(&"x".into()), 1);
        assert_eq!(p.to_string(), "x*A0 + y*A1 - z*A0 + z*A1 + t*A1");
    }

    #[test]
    fn parses_powers_and_fractions() {
        let vars = Vars::from(["x", "y"]);
        let r = parse_ratfunc("(x + y)^2 / (2*x)", &vars).unwrap();
        assert_eq!(r.den().to_string(), "x");
    }

    #[test]
    fn rejects_undeclared() {
        let vars = Vars::from(["x"]);
        assert!(parse_poly("x + q", &vars).is_err());
    }

    #[test]
    fn roundtrip_display() {
        let vars = Vars::from(["x", "y", "z"]);
        let p = parse_poly("3*x^2 - 2*y*z + 1", &vars).unwrap();
        assert_eq!(parse_poly(&p.to_string(), &vars).unwrap(), p);
    }
}
