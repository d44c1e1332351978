//! Numeric literals for coefficient and step lists.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! list   := expr (',' expr)*
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' unary)?
//! atom   := number ['i'] | 'i' | 'e' | 'pi' | name '(' expr ')' | '(' expr ')'
//! name   := sqrt | exp | ln | log | sin | cos
//! ```
//!
//! Decimal numbers are taken verbatim at the working precision; `1.732`
//! is not rounded to `√3`.

use rug::ops::Pow;
use rug::Float;
use thiserror::Error;

use crate::series::{CoefficientTuple, SeriesError};
use crate::special::{ComplexValue, PrecisionContext};

#[derive(Debug, Error, PartialEq)]
pub enum LiteralError {
    #[error("unexpected input at offset {pos} in `{text}`")]
    Syntax { text: String, pos: usize },
    #[error("`{0}` is not a real-valued operation here")]
    NotReal(String),
    #[error("literal is not finite")]
    NotFinite,
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    prec: u32,
}

impl<'a> Parser<'a> {
    fn error(&self) -> LiteralError {
        LiteralError::Syntax {
            text: self.text.to_string(),
            pos: self.pos,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ComplexValue, LiteralError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ComplexValue, LiteralError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return Err(LiteralError::NotFinite);
                }
                acc = acc.div(&rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ComplexValue, LiteralError> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ComplexValue, LiteralError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exponent = self.unary()?;
        if !exponent.is_real() {
            return Err(LiteralError::NotReal("complex exponent".to_string()));
        }
        let x = &exponent.re;
        if x.is_integer() && x.clone().abs() <= 4096 {
            let n = x.to_f64() as i64;
            let mut out = ComplexValue::real(Float::with_val(self.prec, 1));
            for _ in 0..n.unsigned_abs() {
                out = out.mul(&base);
            }
            if n < 0 {
                if out.is_zero() {
                    return Err(LiteralError::NotFinite);
                }
                out = out.recip();
            }
            return Ok(out);
        }
        if !base.is_real() || base.re < 0 {
            return Err(LiteralError::NotReal(
                "non-integer power of a negative or complex base".to_string(),
            ));
        }
        let value = Float::with_val(self.prec, (&base.re).pow(x));
        Ok(ComplexValue::real(value))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        self.text[start..self.pos].to_string()
    }

    fn number(&mut self) -> Result<Float, LiteralError> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.bytes.len() && p.bytes[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'.' {
            self.pos += 1;
            digits(self);
        }
        // an exponent needs digits after it; a bare trailing `e` is left unparsed
        if self.pos < self.bytes.len()
            && (self.bytes[self.pos] == b'e' || self.bytes[self.pos] == b'E')
        {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.bytes.len()
                && (self.bytes[self.pos] == b'+' || self.bytes[self.pos] == b'-')
            {
                self.pos += 1;
            }
            let before = self.pos;
            digits(self);
            if self.pos == before {
                self.pos = save;
            }
        }
        let text = &self.text[start..self.pos];
        let parsed = Float::parse(text).map_err(|_| self.error())?;
        Ok(Float::with_val(self.prec, parsed))
    }

    fn atom(&mut self) -> Result<ComplexValue, LiteralError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let x = self.number()?;
                if self.peek() == Some(b'i') {
                    self.pos += 1;
                    return Ok(ComplexValue::new(Float::new(self.prec), x));
                }
                Ok(ComplexValue::real(x))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error());
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                match name.as_str() {
                    "i" => Ok(ComplexValue::i(self.prec)),
                    "e" => Ok(ComplexValue::real(Float::with_val(self.prec, 1).exp())),
                    "pi" => Ok(ComplexValue::real(ComplexValue::pi(self.prec))),
                    "sqrt" | "exp" | "ln" | "log" | "sin" | "cos" => {
                        if !self.eat(b'(') {
                            return Err(self.error());
                        }
                        let arg = self.expr()?;
                        if !self.eat(b')') {
                            return Err(self.error());
                        }
                        self.function(&name, arg)
                    }
                    _ => {
                        self.pos = start;
                        Err(self.error())
                    }
                }
            }
            _ => Err(self.error()),
        }
    }

    fn function(&self, name: &str, arg: ComplexValue) -> Result<ComplexValue, LiteralError> {
        if !arg.is_real() {
            return Err(LiteralError::NotReal(format!(
                "{name} of a complex argument"
            )));
        }
        let x = arg.re;
        let value = match name {
            "sqrt" if x >= 0 => x.sqrt(),
            "exp" => x.exp(),
            "ln" | "log" if x > 0 => x.ln(),
            "sin" => x.sin(),
            "cos" => x.cos(),
            _ => {
                return Err(LiteralError::NotReal(format!(
                    "{name} outside its real domain"
                )))
            }
        };
        Ok(ComplexValue::real(value))
    }
}

/// Evaluates one literal at the working precision of `ctx`.
pub fn parse_value(text: &str, ctx: PrecisionContext) -> Result<ComplexValue, LiteralError> {
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
        prec: ctx.working().bits(),
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error());
    }
    if !v.is_finite() {
        return Err(LiteralError::NotFinite);
    }
    Ok(v)
}

/// Comma-separated list of literals.
pub fn parse_list(text: &str, ctx: PrecisionContext) -> Result<Vec<ComplexValue>, LiteralError> {
    text.split(',').map(|part| parse_value(part, ctx)).collect()
}

/// Comma-separated list that must be real.
pub fn parse_real_list(text: &str, ctx: PrecisionContext) -> Result<Vec<Float>, LiteralError> {
    parse_list(text, ctx)?
        .into_iter()
        .map(|z| {
            if z.is_real() {
                Ok(z.re)
            } else {
                Err(LiteralError::NotReal(format!(
                    "`{text}` has a complex entry"
                )))
            }
        })
        .collect()
}

#[derive(Debug, Error)]
pub enum TupleError {
    #[error(transparent)]
    Literal(#[from] LiteralError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub fn parse_tuple(text: &str, ctx: PrecisionContext) -> Result<CoefficientTuple, TupleError> {
    Ok(CoefficientTuple::new(parse_list(text, ctx)?, ctx)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128).unwrap()
    }

    fn real(s: &str) -> f64 {
        let v = parse_value(s, ctx()).unwrap();
        assert!(v.is_real(), "{s}");
        v.re.to_f64()
    }

    #[test]
    fn arithmetic_and_constants() {
        assert_eq!(real("3"), 3.0);
        assert_eq!(real("-1.5"), -1.5);
        assert_eq!(real("1.732"), 1.732);
        assert_eq!(real("2*3-4/8"), 5.5);
        assert_eq!(real("2^3^2"), 512.0);
        assert_eq!(real("-2^2"), -4.0);
        assert!((real("e^2") - std::f64::consts::E.powi(2)).abs() < 1e-14);
        assert!((real("sqrt(2)") - 2f64.sqrt()).abs() < 1e-16);
        assert!((real("2*cos(pi/8)") - 1.847_759_065_022_573_5).abs() < 1e-15);
        assert!((real("2^0.5") - 2f64.sqrt()).abs() < 1e-16);
        assert_eq!(real("1.5E2"), 150.0);
        assert_eq!(real("1e-3"), 0.001);
        assert!(parse_value("2e", ctx()).is_err());
    }

    #[test]
    fn complex_values() {
        let z = parse_value("3+4i", ctx()).unwrap();
        assert_eq!((z.re.to_f64(), z.im.to_f64()), (3.0, 4.0));
        let z = parse_value("i^2", ctx()).unwrap();
        assert_eq!((z.re.to_f64(), z.im.to_f64()), (-1.0, 0.0));
        let z = parse_value("(1-i)/2", ctx()).unwrap();
        assert_eq!((z.re.to_f64(), z.im.to_f64()), (0.5, -0.5));
    }

    #[test]
    fn lists_and_errors() {
        let v = parse_real_list("e^2, e, e", ctx()).unwrap();
        assert_eq!(v.len(), 3);
        assert!(parse_real_list("1,i,1", ctx()).is_err());
        assert!(parse_value("sqrt(-1)", ctx()).is_err());
        assert!(parse_value("1/0", ctx()).is_err());
        assert!(parse_value("2+", ctx()).is_err());
        assert!(parse_value("foo(2)", ctx()).is_err());
        assert!(parse_value("(1", ctx()).is_err());
        assert!(parse_value("", ctx()).is_err());
        assert!(parse_tuple("1,1", ctx()).is_err());
        assert!(parse_tuple("1,2,1", ctx()).is_ok());
    }
}
