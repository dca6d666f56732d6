//! Text form of polynomials.
//!
//! ```text
//! poly   := ["-"] term { ("+" | "-") term } ;
//! term   := factor { ["*"] factor } ;
//! factor := nat | "w" ["^" nat] | "x" ["^" nat] ;
//! ```
//!
//! This accepts the documented `coef ["*"] mono` terms and additionally
//! products such as `2*w*x^3`, which [`Poly`]'s `Display` emits for
//! coefficients outside the prime subfield. Integers are read modulo p and
//! `w` is the class of `x` modulo the field modulus. Whitespace is ignored.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::Poly;

/// Exponents at or above this bound are rejected.
pub const MAX_EXPONENT: u64 = 1 << 16;

pub fn parse_poly(field: &Field, text: &str) -> Result<Poly> {
    let mut p = Parser {
        field,
        src: text,
        chars: text.char_indices().collect(),
        pos: 0,
    };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(poly)
}

struct Parser<'a> {
    field: &'a Field,
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: &str) -> Error {
        let offset = self
            .chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.src.len());
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        let found = match self.chars.get(self.pos) {
            Some(&(_, c)) => format!("{message} (found {c:?})"),
            None => format!("{message} (found end of input)"),
        };
        Error::Syntax {
            line,
            column,
            message: found,
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.field);
        let mut negate = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut coeff = Elem::ONE;
        let mut exp = 0u64;
        self.factor(&mut coeff, &mut exp)?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.factor(&mut coeff, &mut exp)?;
                }
                Some(c) if c.is_ascii_digit() || c == 'w' || c == 'x' => {
                    self.factor(&mut coeff, &mut exp)?;
                }
                _ => break,
            }
        }
        if exp >= MAX_EXPONENT {
            return Err(self.error("exponent too large"));
        }
        Ok(Poly::monomial(self.field, coeff, exp as usize))
    }

    fn factor(&mut self, coeff: &mut Elem, exp: &mut u64) -> Result<()> {
        let f = self.field;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                let v = f.from_int((n % f.characteristic() as u64) as i64);
                *coeff = f.mul(*coeff, v);
            }
            Some('w') => {
                if f.degree() == 1 {
                    return Err(self.error("`w` needs an extension field"));
                }
                self.pos += 1;
                let e = self.power()?;
                *coeff = f.mul(*coeff, f.pow(f.generator(), e));
            }
            Some('x') => {
                self.pos += 1;
                *exp += self.power()?;
            }
            _ => return Err(self.error("expected a number, `w` or `x`")),
        }
        Ok(())
    }

    fn power(&mut self) -> Result<u64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error("expected an exponent"));
        }
        let e = self.nat()?;
        if e >= MAX_EXPONENT {
            return Err(self.error("exponent too large"));
        }
        Ok(e)
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            let Some(d) = c.to_digit(10) else { break };
            v = v.saturating_mul(10).saturating_add(d as u64);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        Ok(v)
    }
}
