//! Recursive-descent parser for element expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := integer ['/' integer] | ident ['^' integer] | 'E(' rational ')' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Algebra, AlgebraKind, Element};
use crate::error::{Error, Result};

struct Parser<'a> {
    algebra: &'a Algebra,
    text: &'a str,
    pos: usize,
    variables: Vec<String>,
}

pub(super) fn parse_element(algebra: &Algebra, text: &str) -> Result<Element> {
    let mut p = Parser {
        algebra,
        text,
        pos: 0,
        variables: algebra.variables(),
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(self.text[start..self.pos].parse().expect("digits"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let neg = self.eat('-');
        let num = self.integer()?;
        let den = if self.eat('/') {
            let at = self.pos;
            let d = self.integer()?;
            if d.is_zero() {
                self.pos = at;
                return Err(self.error("zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let q = BigRational::new(num, den);
        Ok(if neg { -q } else { q })
    }

    fn factor(&mut self) -> Result<Element> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let q = self.rational()?;
                Ok(self.algebra.scalar(self.algebra.field().rational(&q)?))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                self.power_of(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek_raw().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                if name == "E" && matches!(self.algebra.kind(), AlgebraKind::ExpPoly) {
                    self.expect('(')?;
                    let rate = self.rational()?;
                    self.expect(')')?;
                    return self.power_of(self.algebra.exp_term(rate, 0));
                }
                if !self.variables.iter().any(|v| v == name) {
                    return Err(Error::UnknownVariable(name.to_string()));
                }
                let v = self.algebra.var(name)?;
                self.power_of(v)
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn power_of(&mut self, base: Element) -> Result<Element> {
        if self.eat('^') {
            let k = self.integer()?;
            let k: u32 = k.try_into().map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }
}
