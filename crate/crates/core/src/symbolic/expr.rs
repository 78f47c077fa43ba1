//! Integer combinations of graded words.
//!
//! Syntax, one theory per expression:
//! `2*eta^2*{3,5} - {2}@GF(7)` (MWK), `[3]*[5] + eta*[2]*[2]*[2]@GF(7)` (WK),
//! `l(3)*l(5)@GF(7)` (KM). `<a>` is the unit `1 - eta[a]` in WK and
//! `1 + eta{a}` in MWK; parentheses group; `*` distributes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Theory;
use crate::error::{Error, Result};
use crate::fields::{FieldDesc, FieldElem};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GradedWord {
    pub eta: u32,
    pub letters: Vec<FieldElem>,
}

impl GradedWord {
    pub fn new(eta: u32, letters: Vec<FieldElem>) -> Self {
        GradedWord { eta, letters }
    }

    pub fn degree(&self) -> i64 {
        self.letters.len() as i64 - self.eta as i64
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolExpr {
    theory: Theory,
    field: FieldDesc,
    terms: BTreeMap<GradedWord, BigInt>,
}

impl SymbolExpr {
    pub fn zero(theory: Theory, field: &FieldDesc) -> Self {
        SymbolExpr { theory, field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn int(theory: Theory, field: &FieldDesc, c: i64) -> Self {
        Self::word(theory, field, GradedWord::new(0, Vec::new()), c)
    }

    pub fn word(theory: Theory, field: &FieldDesc, w: GradedWord, c: i64) -> Self {
        let mut e = Self::zero(theory, field);
        if c != 0 {
            e.terms.insert(w, BigInt::from(c));
        }
        e
    }

    pub fn eta(theory: Theory, field: &FieldDesc) -> Self {
        Self::word(theory, field, GradedWord::new(1, Vec::new()), 1)
    }

    /// `[a]`, `{a}` or `l(a)`.
    pub fn letter(theory: Theory, a: &FieldElem) -> Self {
        Self::word(theory, a.field(), GradedWord::new(0, vec![a.clone()]), 1)
    }

    /// `1 - eta[a]` in WK, `1 + eta{a}` in MWK.
    pub fn unit(theory: Theory, a: &FieldElem) -> Result<Self> {
        let s = match theory {
            Theory::WK => -1,
            Theory::MWK => 1,
            Theory::KM => return Err(Error::InvalidSymbol("no units in Milnor K-theory".into())),
        };
        let f = a.field();
        Ok(Self::int(theory, f, 1).add(&Self::word(theory, f, GradedWord::new(1, vec![a.clone()]), s)))
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GradedWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms; `None` for the empty expression.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut d = None;
        for w in self.terms.keys() {
            match d {
                None => d = Some(w.degree()),
                Some(x) if x != w.degree() => return Err(Error::MixedDegree(x, w.degree())),
                _ => {}
            }
        }
        Ok(d)
    }

    fn accumulate(&mut self, w: GradedWord, c: BigInt) {
        let slot = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &SymbolExpr) -> SymbolExpr {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.accumulate(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SymbolExpr {
        self.scale(-1)
    }

    pub fn sub(&self, o: &SymbolExpr) -> SymbolExpr {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> SymbolExpr {
        let mut out = Self::zero(self.theory, &self.field);
        if k != 0 {
            out.terms = self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect();
        }
        out
    }

    /// Concatenation product; eta is central.
    pub fn mul(&self, o: &SymbolExpr) -> SymbolExpr {
        let mut out = Self::zero(self.theory, &self.field);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut letters = w1.letters.clone();
                letters.extend(w2.letters.iter().cloned());
                out.accumulate(GradedWord::new(w1.eta + w2.eta, letters), c1 * c2);
            }
        }
        out
    }

    pub fn parse(s: &str, theory: Option<Theory>) -> Result<SymbolExpr> {
        let at = s.rfind('@').ok_or(Error::Parse { pos: s.len(), expected: "'@FIELD'".into() })?;
        let field = FieldDesc::parse(&s[at + 1..]).map_err(|e| match e {
            Error::Parse { pos, expected } => Error::Parse { pos: pos + at + 1, expected },
            e => e,
        })?;
        let body = &s[..at];
        let inferred = infer_theory(body)?;
        let theory = match (theory, inferred) {
            (Some(t), Some(i)) if t != i => {
                return Err(Error::InvalidSymbol(format!("{i} syntax in a {t} expression")));
            }
            (Some(t), _) | (None, Some(t)) => t,
            (None, None) => return Err(Error::InvalidSymbol("cannot infer the theory".into())),
        };
        let mut p = Parser { s: body, pos: 0, theory, field };
        let e = p.expr()?;
        p.ws();
        if p.pos != body.len() {
            return Err(Error::Parse { pos: p.pos, expected: "'+', '-' or '*'".into() });
        }
        Ok(e)
    }
}

fn infer_theory(s: &str) -> Result<Option<Theory>> {
    let mut found: Option<Theory> = None;
    let b = s.as_bytes();
    for (i, &c) in b.iter().enumerate() {
        let t = match c {
            b'{' => Theory::MWK,
            b'[' => Theory::WK,
            b'l' if b.get(i + 1) == Some(&b'(') => Theory::KM,
            _ => continue,
        };
        match found {
            Some(f) if f != t => return Err(Error::InvalidSymbol(format!("mixes {f} and {t} syntax"))),
            _ => found = Some(t),
        }
    }
    Ok(found)
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
    theory: Theory,
    field: FieldDesc,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.s[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.s[self.pos..].chars().next()
    }

    fn err(&self, expected: &str) -> Error {
        Error::Parse { pos: self.pos, expected: expected.into() }
    }

    fn expr(&mut self) -> Result<SymbolExpr> {
        let mut acc = SymbolExpr::zero(self.theory, &self.field);
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&t.scale(sign));
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<SymbolExpr> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        let len = self.s[start..].bytes().take_while(|c| c.is_ascii_digit()).count();
        self.pos += len;
        self.s[start..self.pos].parse().map_err(|_| Error::Parse { pos: start, expected: "integer".into() })
    }

    /// Contents up to the bracket closing the one just consumed.
    fn bracketed(&mut self, close: char) -> Result<(usize, &'a str)> {
        let start = self.pos;
        let s: &'a str = self.s;
        let mut depth = 0i32;
        for (i, c) in s[start..].char_indices() {
            match c {
                '(' | '[' | '{' | '<' => depth += 1,
                ')' | ']' | '}' | '>' if depth > 0 => depth -= 1,
                c2 if c2 == close && depth == 0 => {
                    self.pos = start + i + 1;
                    return Ok((start, &s[start..start + i]));
                }
                _ => {}
            }
        }
        Err(Error::Parse { pos: self.s.len(), expected: format!("'{close}'") })
    }

    fn letters(&mut self, close: char) -> Result<Vec<FieldElem>> {
        let (off, body) = self.bracketed(close)?;
        let args = crate::quadform::split_args(body, off)?;
        if args.is_empty() {
            return Err(Error::Parse { pos: off, expected: "unit".into() });
        }
        let mut out = Vec::new();
        for (o, a) in args {
            let lead = a.len() - a.trim_start().len();
            let x = self.field.parse_elem_at(a.trim(), o + lead)?;
            if x.is_zero() {
                return Err(Error::ZeroElement);
            }
            out.push(x);
        }
        Ok(out)
    }

    fn letter_word(&self, letters: Vec<FieldElem>) -> SymbolExpr {
        SymbolExpr::word(self.theory, &self.field, GradedWord::new(0, letters), 1)
    }

    fn factor(&mut self) -> Result<SymbolExpr> {
        let Some(c) = self.peek() else { return Err(self.err("factor")) };
        let rest = &self.s[self.pos..];
        if c.is_ascii_digit() {
            let n = self.int()?;
            return Ok(SymbolExpr::int(self.theory, &self.field, n));
        }
        if rest.starts_with("eta") {
            if self.theory == Theory::KM {
                return Err(Error::InvalidSymbol("eta in Milnor K-theory".into()));
            }
            self.pos += 3;
            let mut r = 1;
            if self.peek() == Some('^') {
                self.pos += 1;
                r = self.int()? as u32;
            }
            return Ok(SymbolExpr::word(self.theory, &self.field, GradedWord::new(r, Vec::new()), 1));
        }
        self.pos += 1;
        match (c, self.theory) {
            ('(', _) => {
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            ('{', Theory::MWK) => {
                let l = self.letters('}')?;
                Ok(self.letter_word(l))
            }
            ('[', Theory::WK) => {
                let l = self.letters(']')?;
                if l.len() != 1 {
                    return Err(Error::InvalidSymbol("one unit per [..]".into()));
                }
                Ok(self.letter_word(l))
            }
            ('l', Theory::KM) if rest.starts_with("l(") => {
                self.pos += 1;
                let l = self.letters(')')?;
                Ok(self.letter_word(l))
            }
            ('<', Theory::WK | Theory::MWK) => {
                let l = self.letters('>')?;
                if l.len() != 1 {
                    return Err(Error::InvalidSymbol("one unit per <..>".into()));
                }
                SymbolExpr::unit(self.theory, &l[0])
            }
            _ => {
                self.pos -= 1;
                Err(self.err("integer, eta, or a symbol"))
            }
        }
    }
}

impl fmt::Display for SymbolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mut parts: Vec<String> = Vec::new();
            if w.eta == 1 {
                parts.push("eta".into());
            } else if w.eta > 1 {
                parts.push(format!("eta^{}", w.eta));
            }
            let ls: Vec<String> = w.letters.iter().map(|a| a.to_string()).collect();
            if !ls.is_empty() {
                match self.theory {
                    Theory::MWK => parts.push(format!("{{{}}}", ls.join(","))),
                    Theory::WK => parts.extend(ls.iter().map(|a| format!("[{a}]"))),
                    Theory::KM => parts.extend(ls.iter().map(|a| format!("l({a})"))),
                }
            }
            let mag = c.abs();
            let body = if parts.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                parts.join("*")
            } else {
                format!("{mag}*{}", parts.join("*"))
            };
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        write!(f, "@{}", self.field)
    }
}
