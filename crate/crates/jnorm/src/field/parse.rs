//! Textual scalars: `n`, `n/d`, and rational expressions in `e` such as
//! `(1 - 2*e + e^2)/(3 + e)`.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;

use super::{FieldError, OrderedField, Rational};

/// Parses a scalar into any supported field. The infinitesimal `e` is only
/// accepted by fields that have one.
pub fn parse_scalar<F: OrderedField>(text: &str) -> Result<F, FieldError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr::<F>()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> FieldError {
        FieldError::Parse {
            pos: self.pos,
            msg: String::from(msg),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<F: OrderedField>(&mut self) -> Result<F, FieldError> {
        let mut acc = self.term::<F>()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: OrderedField>(&mut self) -> Result<F, FieldError> {
        let mut acc = self.unary::<F>()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs: F = self.unary()?;
                acc = acc.checked_div(&rhs).map_err(|err| match err {
                    FieldError::DivisionByZero => FieldError::Parse {
                        pos: at,
                        msg: String::from("division by zero"),
                    },
                    other => other,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<F: OrderedField>(&mut self) -> Result<F, FieldError> {
        if self.eat(b'-') {
            return Ok(-self.unary::<F>()?);
        }
        let base = self.atom::<F>()?;
        if self.eat(b'^') {
            let exp = self.digits()?;
            let exp: u32 = exp.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok((0..exp).fold(F::one(), |acc, _| acc * base.clone()));
        }
        Ok(base)
    }

    fn atom<F: OrderedField>(&mut self) -> Result<F, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'e') => {
                let at = self.pos;
                self.pos += 1;
                F::epsilon().ok_or(FieldError::Parse {
                    pos: at,
                    msg: String::from("the infinitesimal 'e' is not an element of this field"),
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits()?;
                let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(F::from_rational(&Rational::from_integer(n)))
            }
            Some(c) => Err(self.error(&format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<String, FieldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from(core::str::from_utf8(&self.src[start..self.pos]).unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, RatFunc};

    #[test]
    fn rationals() {
        assert_eq!(parse_scalar::<Rational>("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_scalar::<Rational>(" -6/4 ").unwrap(), ratio(-3, 2));
        assert_eq!(parse_scalar::<Rational>("17").unwrap(), ratio(17, 1));
        assert_eq!(parse_scalar::<Rational>("2^10").unwrap(), ratio(1024, 1));
    }

    #[test]
    fn rejects_epsilon_in_rationals() {
        assert!(matches!(
            parse_scalar::<Rational>("1 + e"),
            Err(FieldError::Parse { pos: 4, .. })
        ));
    }

    #[test]
    fn reports_positions() {
        assert!(matches!(parse_scalar::<Rational>("1/0"), Err(FieldError::Parse { pos: 1, .. })));
        assert!(matches!(parse_scalar::<Rational>("(1 + 2"), Err(FieldError::Parse { pos: 6, .. })));
        assert!(matches!(parse_scalar::<Rational>("1 2"), Err(FieldError::Parse { pos: 2, .. })));
        assert!(parse_scalar::<Rational>("").is_err());
    }

    #[test]
    fn rational_functions() {
        let x: RatFunc = parse_scalar("(1 - 2*e + e^2)/(3 + e)").unwrap();
        assert_eq!(alloc::string::ToString::to_string(&x), "(1 - 2*e + e^2)/(3 + e)");
    }
}
