//! Element expressions: integers, the field generator (`x` or `t`), `+ - * / ^`
//! and parentheses, evaluated directly in the target field.

use num_bigint::BigInt;

use super::{FieldDesc, FieldElem};
use crate::error::{Error, Result};

pub(crate) struct ExprParser<'a> {
    field: &'a FieldDesc,
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> ExprParser<'a> {
    pub(crate) fn parse(field: &'a FieldDesc, src: &'a str, offset: usize) -> Result<FieldElem> {
        let mut p = ExprParser { field, src: src.as_bytes(), pos: 0, offset };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("end of element"));
        }
        Ok(v)
    }

    fn err(&self, expected: &str) -> Error {
        Error::Parse { pos: self.offset + self.pos, expected: expected.to_string() }
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

    fn expr(&mut self) -> Result<FieldElem> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElem> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.div(&rhs).map_err(|_| Error::Parse {
                    pos: self.offset + at,
                    expected: "nonzero divisor".into(),
                })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElem> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let negative = self.peek() == Some(b'-');
            if negative {
                self.pos += 1;
            }
            self.skip_ws();
            let start = self.pos;
            let e = self.integer().ok_or_else(|| self.err("exponent"))?;
            let e: i64 = e.try_into().map_err(|_| self.err("small exponent"))?;
            let e = if negative { -e } else { e };
            return base.pow(e).map_err(|_| Error::Parse {
                pos: self.offset + start,
                expected: "invertible base for negative exponent".into(),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().unwrap();
                Ok(self.field.from_bigint(&n))
            }
            Some(c @ (b'x' | b't')) => {
                self.pos += 1;
                self.field.generator(c as char).ok_or_else(|| {
                    Error::Parse { pos: self.offset + self.pos - 1, expected: "integer".into() }
                })
            }
            _ => Err(self.err("integer, variable, or '('")),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }
}
