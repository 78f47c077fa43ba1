//! Exact fields of characteristic not 2 and their square classes.
//!
//! Supported: `Q`, `F_p`, `F_q = F_p[x]/(m)`, `F_p(t)`, always with `p` odd.

mod expr;
mod finite;
pub mod hilbert;
pub mod integer;
pub mod place;
pub mod poly;
pub mod ratfun;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use finite::FiniteTables;
pub use hilbert::hilbert_symbol;
pub use integer::{factor_integer, legendre, IntFactorization};
pub use place::Place;
pub use poly::{factor_poly, Poly, PolyFactorization};
pub use ratfun::RatFun;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
    ExtField { p: u64, modulus: Poly },
    RatFunField(u64),
}

struct Inner {
    kind: FieldKind,
    tables: OnceLock<FiniteTables>,
}

/// Cheap to clone; finite fields build their log tables on first use.
#[derive(Clone)]
pub struct FieldDesc {
    inner: Arc<Inner>,
}

impl PartialEq for FieldDesc {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &o.inner) || self.inner.kind == o.inner.kind
    }
}

impl Eq for FieldDesc {}

impl Hash for FieldDesc {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.inner.kind.hash(h)
    }
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.kind {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::PrimeField(p) => write!(f, "GF({p})"),
            FieldKind::ExtField { p, modulus } => {
                let q = p.pow(modulus.deg().unwrap() as u32);
                write!(f, "GF({q};{})", modulus.display_in("x"))
            }
            FieldKind::RatFunField(p) => write!(f, "GF({p})(t)"),
        }
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !integer::is_prime_u64(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

impl FieldDesc {
    /// Descriptors are interned so that log tables are built once per field.
    fn from_kind(kind: FieldKind) -> Self {
        static REGISTRY: OnceLock<Mutex<HashMap<FieldKind, FieldDesc>>> = OnceLock::new();
        let mut reg = REGISTRY.get_or_init(Default::default).lock().unwrap();
        reg.entry(kind.clone())
            .or_insert_with(|| FieldDesc { inner: Arc::new(Inner { kind, tables: OnceLock::new() }) })
            .clone()
    }

    pub fn rationals() -> Self {
        Self::from_kind(FieldKind::Rationals)
    }

    pub fn prime(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(Self::from_kind(FieldKind::PrimeField(p)))
    }

    /// `F_p[x]/(m)`; `m` is made monic and must be irreducible of degree >= 2.
    pub fn ext(p: u64, modulus: Poly) -> Result<Self> {
        check_odd_prime(p)?;
        let modulus = modulus.monic(p).1;
        if modulus.deg().unwrap_or(0) < 2 || !poly::is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(modulus.display_in("x").to_string()));
        }
        if p.checked_pow(modulus.deg().unwrap() as u32).is_none_or(|q| q > 1 << 24) {
            return Err(Error::UnsupportedField("extension too large".into()));
        }
        Ok(Self::from_kind(FieldKind::ExtField { p, modulus }))
    }

    /// `F_q` for a prime power `q`, using the least monic irreducible modulus.
    pub fn galois(q: u64) -> Result<Self> {
        let (p, d) = prime_power(q).ok_or(Error::NotOddPrime(q))?;
        if d == 1 {
            return Self::prime(p);
        }
        check_odd_prime(p)?;
        let m = poly::monic_irreducibles(d as usize, p).next().unwrap();
        Self::ext(p, m)
    }

    pub fn ratfun(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(Self::from_kind(FieldKind::RatFunField(p)))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.inner.kind
    }

    /// 0 for `Q`.
    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            FieldKind::Rationals => 0,
            FieldKind::PrimeField(p) | FieldKind::RatFunField(p) => *p,
            FieldKind::ExtField { p, .. } => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind(), FieldKind::PrimeField(_) | FieldKind::ExtField { .. })
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.kind(), FieldKind::Rationals)
    }

    pub fn is_ratfun(&self) -> bool {
        matches!(self.kind(), FieldKind::RatFunField(_))
    }

    pub fn order(&self) -> Option<u64> {
        match self.kind() {
            FieldKind::PrimeField(p) => Some(*p),
            FieldKind::ExtField { p, modulus } => Some(p.pow(modulus.deg().unwrap() as u32)),
            _ => None,
        }
    }

    pub fn tables(&self) -> Result<&FiniteTables> {
        let modulus = match self.kind() {
            FieldKind::PrimeField(_) => None,
            FieldKind::ExtField { modulus, .. } => Some(modulus.clone()),
            _ => return Err(Error::UnsupportedField(format!("{self} is not finite"))),
        };
        let p = self.characteristic();
        Ok(self.inner.tables.get_or_init(|| FiniteTables::new(p, modulus)))
    }

    pub fn require_same(&self, o: &FieldDesc) -> Result<()> {
        if self == o {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn elem(&self, value: Value) -> FieldElem {
        FieldElem { field: self.clone(), value }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        let p = self.characteristic();
        match self.kind() {
            FieldKind::Rationals => self.elem(Value::Rat(BigRational::from_integer(n.clone()))),
            FieldKind::PrimeField(_) => self.elem(Value::Fp(integer::reduce_mod(n, p))),
            FieldKind::ExtField { .. } => {
                self.elem(Value::Ext(Poly::constant(integer::reduce_mod(n, p), p)))
            }
            FieldKind::RatFunField(_) => self.elem(Value::RatFun(RatFun::from_poly(
                Poly::constant(integer::reduce_mod(n, p), p),
            ))),
        }
    }

    /// Rational `n/d` mapped into the field.
    pub fn from_ratio(&self, n: i64, d: i64) -> Result<FieldElem> {
        self.from_i64(n).div(&self.from_i64(d))
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElem> {
        self.from_bigint(r.numer()).div(&self.from_bigint(r.denom()))
    }

    pub fn from_poly(&self, f: Poly) -> Result<FieldElem> {
        let p = self.characteristic();
        match self.kind() {
            FieldKind::ExtField { modulus, .. } => Ok(self.elem(Value::Ext(f.rem(modulus, p)?))),
            FieldKind::RatFunField(_) => Ok(self.elem(Value::RatFun(RatFun::from_poly(f)))),
            FieldKind::PrimeField(_) if f.is_constant() => Ok(self.elem(Value::Fp(f.coeff(0)))),
            _ => Err(Error::UnsupportedField(format!("{self} has no polynomial elements"))),
        }
    }

    pub fn from_ratfun(&self, r: RatFun) -> Result<FieldElem> {
        match self.kind() {
            FieldKind::RatFunField(_) => Ok(self.elem(Value::RatFun(r))),
            _ => Err(Error::FieldMismatch),
        }
    }

    /// `x` in `F_p[x]/(m)`, `t` in `F_p(t)`.
    pub fn generator(&self, var: char) -> Option<FieldElem> {
        match (self.kind(), var) {
            (FieldKind::ExtField { .. }, 'x') | (FieldKind::RatFunField(_), 't') => {
                self.from_poly(Poly::x()).ok()
            }
            _ => None,
        }
    }

    /// Finite-field element with the given code.
    pub fn from_code(&self, code: u64) -> FieldElem {
        let p = self.characteristic();
        match self.kind() {
            FieldKind::PrimeField(_) => self.elem(Value::Fp(code % p)),
            FieldKind::ExtField { .. } => self.elem(Value::Ext(Poly::from_code(code, p))),
            _ => panic!("from_code on infinite field"),
        }
    }

    pub fn unit_from_log(&self, i: u32) -> Result<FieldElem> {
        let t = self.tables()?;
        Ok(self.from_code(t.exp(i)))
    }

    /// All elements in code order.
    pub fn elements(&self) -> Result<Vec<FieldElem>> {
        let q = self.order().ok_or_else(|| Error::UnsupportedField(self.to_string()))?;
        Ok((0..q).map(|c| self.from_code(c)).collect())
    }

    pub fn units(&self) -> Result<Vec<FieldElem>> {
        Ok(self.elements()?.into_iter().skip(1).collect())
    }

    /// Canonical square-class representatives `{1, least nonsquare}`.
    pub fn square_class_reps(&self) -> Result<Vec<SquareClass>> {
        let t = self.tables()?;
        Ok(vec![
            SquareClass { rep: self.one() },
            SquareClass { rep: self.from_code(t.least_nonsquare()) },
        ])
    }

    pub fn parse(tag: &str) -> Result<Self> {
        parse_field_tag(tag.trim())
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        self.parse_elem_at(s, 0)
    }

    /// As `parse_elem`, reporting error positions shifted by `offset`.
    pub fn parse_elem_at(&self, s: &str, offset: usize) -> Result<FieldElem> {
        expr::ExprParser::parse(self, s, offset)
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut d) = (q, 0);
    while m % p == 0 {
        m /= p;
        d += 1;
    }
    (m == 1).then_some((p, d))
}

fn parse_field_tag(tag: &str) -> Result<FieldDesc> {
    let bad = |pos| Error::Parse { pos, expected: "field tag QQ, GF(p), GF(q;m), GF(p)(t)".into() };
    if tag == "QQ" || tag == "Q" {
        return Ok(FieldDesc::rationals());
    }
    let rest = tag.strip_prefix("GF(").ok_or(bad(0))?;
    let close = rest.find(')').ok_or(bad(tag.len()))?;
    let inner = &rest[..close];
    let tail = rest[close + 1..].trim();
    let (qs, modulus) = match inner.split_once(';') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (inner.trim(), None),
    };
    let q: u64 = qs.parse().map_err(|_| bad(3))?;
    if tail == "(t)" {
        if modulus.is_some() {
            return Err(bad(3));
        }
        return FieldDesc::ratfun(q);
    }
    if !tail.is_empty() {
        return Err(bad(4 + close));
    }
    match modulus {
        None => FieldDesc::galois(q),
        Some(m) => {
            let (p, d) = prime_power(q).ok_or(Error::NotOddPrime(q))?;
            check_odd_prime(p)?;
            let f = parse_poly(m, p, 'x', 4 + qs.len() + 1)?;
            if f.deg() != Some(d as usize) {
                return Err(Error::ReducibleModulus(m.to_string()));
            }
            FieldDesc::ext(p, f)
        }
    }
}

/// Polynomial over `F_p` in the given variable, e.g. `t^2+1`.
pub fn parse_poly(s: &str, p: u64, var: char, offset: usize) -> Result<Poly> {
    let aux = FieldDesc::ratfun(p)?;
    let src = s.replace(var, "t");
    let e = aux.parse_elem_at(&src, offset)?;
    match e.value {
        Value::RatFun(r) if r.den().is_one() => Ok(r.num().clone()),
        _ => Err(Error::Parse { pos: offset, expected: "polynomial".into() }),
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Value {
    Rat(BigRational),
    Fp(u64),
    Ext(Poly),
    RatFun(RatFun),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: FieldDesc,
    value: Value,
}

impl FieldElem {
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_zero(),
            Value::Fp(v) => *v == 0,
            Value::Ext(f) => f.is_zero(),
            Value::RatFun(r) => r.is_zero(),
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_ratfun(&self) -> Option<&RatFun> {
        match &self.value {
            Value::RatFun(r) => Some(r),
            _ => None,
        }
    }

    /// Code of a finite-field element.
    pub fn code(&self) -> Option<u64> {
        let p = self.field.characteristic();
        match &self.value {
            Value::Fp(v) => Some(*v),
            Value::Ext(f) => Some(f.code(p)),
            _ => None,
        }
    }

    /// Discrete log of a finite-field unit.
    pub fn log(&self) -> Result<u32> {
        let t = self.field.tables()?;
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(t.log(self.code().unwrap()))
    }

    fn check(&self, o: &FieldElem) {
        assert!(self.field == o.field, "field mismatch: {} vs {}", self.field, o.field);
    }

    pub fn neg(&self) -> FieldElem {
        let p = self.field.characteristic();
        let v = match &self.value {
            Value::Rat(r) => Value::Rat(-r),
            Value::Fp(v) => Value::Fp((p - v) % p),
            Value::Ext(f) => Value::Ext(f.neg(p)),
            Value::RatFun(r) => Value::RatFun(r.neg(p)),
        };
        self.field.elem(v)
    }

    pub fn add(&self, o: &FieldElem) -> FieldElem {
        self.check(o);
        let p = self.field.characteristic();
        let v = match (&self.value, &o.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Fp(a), Value::Fp(b)) => Value::Fp((a + b) % p),
            (Value::Ext(a), Value::Ext(b)) => Value::Ext(a.add(b, p)),
            (Value::RatFun(a), Value::RatFun(b)) => Value::RatFun(a.add(b, p)),
            _ => unreachable!(),
        };
        self.field.elem(v)
    }

    pub fn sub(&self, o: &FieldElem) -> FieldElem {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FieldElem) -> FieldElem {
        self.check(o);
        let p = self.field.characteristic();
        let v = match (&self.value, &o.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Fp(a), Value::Fp(b)) => Value::Fp(poly::mulm(*a, *b, p)),
            (Value::Ext(a), Value::Ext(b)) => match self.field.kind() {
                FieldKind::ExtField { modulus, .. } => Value::Ext(a.mul_mod(b, modulus, p)),
                _ => unreachable!(),
            },
            (Value::RatFun(a), Value::RatFun(b)) => Value::RatFun(a.mul(b, p)),
            _ => unreachable!(),
        };
        self.field.elem(v)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.characteristic();
        let v = match &self.value {
            Value::Rat(r) => Value::Rat(r.recip()),
            Value::Fp(v) => Value::Fp(integer::inv_mod(*v, p).unwrap()),
            Value::Ext(f) => match self.field.kind() {
                FieldKind::ExtField { modulus, .. } => Value::Ext(f.inv_mod(modulus, p)?),
                _ => unreachable!(),
            },
            Value::RatFun(r) => Value::RatFun(r.inv(p)?),
        };
        Ok(self.field.elem(v))
    }

    pub fn div(&self, o: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn square(&self) -> FieldElem {
        self.mul(self)
    }

    /// Sign of a rational; `None` elsewhere.
    pub fn sign(&self) -> Option<i8> {
        let r = self.as_rational()?;
        Some(if r.is_positive() {
            1
        } else if r.is_negative() {
            -1
        } else {
            0
        })
    }

    /// Canonical total order: code order for finite fields, numeric order for
    /// `Q`, graded polynomial order (numerator, then denominator) for `F_p(t)`.
    pub fn canonical_cmp(&self, o: &FieldElem) -> Ordering {
        match (&self.value, &o.value) {
            (Value::Rat(a), Value::Rat(b)) => a.cmp(b),
            (Value::Fp(a), Value::Fp(b)) => a.cmp(b),
            (Value::Ext(a), Value::Ext(b)) => a.cmp_graded(b),
            (Value::RatFun(a), Value::RatFun(b)) => a
                .num()
                .cmp_graded(b.num())
                .then_with(|| a.den().cmp_graded(b.den())),
            _ => self.field.to_string().cmp(&o.field.to_string()),
        }
    }

    /// Height used to bound rational searches.
    pub fn height(&self) -> Option<u64> {
        let r = self.as_rational()?;
        Some(r.numer().abs().max(r.denom().abs()).to_u64().unwrap_or(u64::MAX))
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, o: &Self) -> Ordering {
        self.canonical_cmp(o)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rat(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Value::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::Fp(v) => write!(f, "{v}"),
            Value::Ext(p) => write!(f, "{}", p.display_in("x")),
            Value::RatFun(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.field)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                FieldElem::$m(self, o)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::neg(self)
    }
}

/// Coset of `F^x / (F^x)^2`, held by its canonical representative.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SquareClass {
    rep: FieldElem,
}

impl SquareClass {
    pub fn rep(&self) -> &FieldElem {
        &self.rep
    }

    pub fn field(&self) -> &FieldDesc {
        self.rep.field()
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }

    pub fn mul(&self, o: &SquareClass) -> SquareClass {
        square_class(&self.rep.mul(&o.rep)).unwrap()
    }

    pub fn neg(&self) -> SquareClass {
        square_class(&self.rep.neg()).unwrap()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

pub fn square_class(x: &FieldElem) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let field = x.field();
    let rep = match &x.value {
        Value::Rat(r) => {
            let n = integer::square_free_part(&(r.numer() * r.denom()))?;
            field.from_bigint(&n)
        }
        Value::Fp(_) | Value::Ext(_) => {
            if x.log()? % 2 == 0 {
                field.one()
            } else {
                field.from_code(field.tables()?.least_nonsquare())
            }
        }
        Value::RatFun(r) => {
            let p = field.characteristic();
            let fnum = poly::factor_poly(r.num(), p)?;
            let fden = poly::factor_poly(r.den(), p)?;
            let lc = poly::mulm(fnum.lead, integer::inv_mod(fden.lead, p).unwrap(), p);
            let mut acc = Poly::constant(constant_class(lc, p), p);
            for (g, e) in fnum.factors.iter().chain(&fden.factors) {
                if e % 2 == 1 {
                    acc = acc.mul(g, p);
                }
            }
            field.from_poly(acc)?
        }
    };
    Ok(SquareClass { rep })
}

/// Canonical class of a nonzero constant in `F_p`: 1 or the least nonsquare.
fn constant_class(c: u64, p: u64) -> u64 {
    if integer::pow_mod(c, (p - 1) / 2, p) == 1 {
        1
    } else {
        (2..p).find(|&a| integer::pow_mod(a, (p - 1) / 2, p) != 1).unwrap()
    }
}

/// Square root in `Q` or a finite field; the root with the smaller code
/// (or the positive one) when it exists.
pub fn sqrt(x: &FieldElem) -> Result<Option<FieldElem>> {
    if x.is_zero() {
        return Ok(Some(x.clone()));
    }
    match &x.value {
        Value::Rat(r) => {
            if r.is_negative() {
                return Ok(None);
            }
            let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
            if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                Ok(Some(x.field.elem(Value::Rat(BigRational::new(n, d)))))
            } else {
                Ok(None)
            }
        }
        Value::Fp(_) | Value::Ext(_) => {
            let l = x.log()?;
            if l % 2 == 1 {
                return Ok(None);
            }
            let y = x.field.unit_from_log(l / 2)?;
            let z = y.neg();
            Ok(Some(if z.code() < y.code() { z } else { y }))
        }
        Value::RatFun(_) => Err(Error::UnsupportedField(x.field.to_string())),
    }
}

pub fn is_square(x: &FieldElem) -> Result<bool> {
    Ok(square_class(x)?.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert_eq!(FieldDesc::prime(2).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(FieldDesc::prime(9).unwrap_err(), Error::NotOddPrime(9));
        let reducible = Poly::from_coeffs(vec![1, 0, 1], 5);
        assert!(matches!(FieldDesc::ext(5, reducible), Err(Error::ReducibleModulus(_))));
    }

    #[test]
    fn tags_roundtrip() {
        for tag in ["QQ", "GF(7)", "GF(9;x^2+1)", "GF(3)(t)", "GF(25;x^2+x+2)"] {
            assert_eq!(FieldDesc::parse(tag).unwrap().to_string(), tag);
        }
        assert_eq!(FieldDesc::parse("GF(9)").unwrap().order(), Some(9));
        assert!(matches!(FieldDesc::parse("GF(9;x^2+x+1)"), Err(Error::ReducibleModulus(_))));
        assert!(matches!(FieldDesc::parse("RR"), Err(Error::Parse { .. })));
    }

    #[test]
    fn element_parsing() {
        let q = FieldDesc::rationals();
        assert_eq!(q.parse_elem("-9/4").unwrap().to_string(), "-9/4");
        assert_eq!(q.parse_elem("2^-2").unwrap().to_string(), "1/4");
        let f = FieldDesc::ratfun(3).unwrap();
        let e = f.parse_elem("(t^2+1)/t").unwrap();
        assert_eq!(e.to_string(), "(t^2+1)/t");
        assert_eq!(f.parse_elem(&e.to_string()).unwrap(), e);
        let g = FieldDesc::parse("GF(9;x^2+1)").unwrap();
        assert_eq!(g.parse_elem("x*x").unwrap(), g.from_i64(-1));
        match q.parse_elem("1/0") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(q.parse_elem("x"), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn square_class_examples() {
        let q = FieldDesc::rationals();
        assert_eq!(square_class(&q.from_i64(12)).unwrap().rep(), &q.from_i64(3));
        let f7 = gf(7);
        assert!(square_class(&f7.one()).unwrap().is_trivial());
        assert_eq!(square_class(&f7.from_i64(5)).unwrap().rep(), &f7.from_i64(3));
        assert_eq!(square_class(&q.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn is_square_examples() {
        let f7 = gf(7);
        assert!(is_square(&f7.from_i64(2)).unwrap());
        assert!(!is_square(&f7.from_i64(-1)).unwrap());
        let q = FieldDesc::rationals();
        assert!(is_square(&q.from_ratio(9, 4).unwrap()).unwrap());
        assert!(!is_square(&q.from_i64(-1)).unwrap());
    }

    #[test]
    fn ratfun_square_classes() {
        let f = FieldDesc::ratfun(3).unwrap();
        // 2 t^3 (t+1)^2 / (t^2+1)  ->  2 * t * (t^2+1)
        let x = f.parse_elem("2*t^3*(t+1)^2/(t^2+1)").unwrap();
        let c = square_class(&x).unwrap();
        assert_eq!(c.rep(), &f.parse_elem("2*t*(t^2+1)").unwrap());
        assert_eq!(square_class(c.rep()).unwrap(), c);
    }

    #[test]
    fn square_classes_match_brute_force() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27] {
            let f = FieldDesc::galois(q).unwrap();
            let units = f.units().unwrap();
            for u in &units {
                let brute = units.iter().any(|y| &y.square() == u);
                assert_eq!(is_square(u).unwrap(), brute, "{u:?}");
            }
        }
    }
}
