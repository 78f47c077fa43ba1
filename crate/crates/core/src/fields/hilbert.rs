//! Hilbert symbols `(a, b)_v` and local square tests.
//!
//! Over `F_p(t)` every place is tame, so the symbol is the quadratic
//! character of the tame symbol `(-1)^(ab) u^b / w^a` in the residue field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::integer::{legendre, valuation as ival};
use super::place::{normalize_at, reduce_unit, residue_field, valuation};
use super::{is_square, FieldElem, Place};
use crate::error::{Error, Result};

fn int_class(x: &FieldElem) -> Result<BigInt> {
    let r = x.as_rational().ok_or(Error::FieldMismatch)?;
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(r.numer() * r.denom())
}

fn split(n: &BigInt, p: u64) -> (u32, BigInt) {
    let a = ival(n, p);
    (a, n / BigInt::from(p).pow(a))
}

fn mod8(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(8)).to_u64().unwrap()
}

fn eps(u: &BigInt) -> u64 {
    ((mod8(u) + 7) % 8 / 2) % 2
}

fn omega(u: &BigInt) -> u64 {
    let r = mod8(u);
    ((r * r - 1) / 8) % 2
}

pub fn hilbert_symbol(a: &FieldElem, b: &FieldElem, v: &Place) -> Result<i8> {
    a.field().require_same(b.field())?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let field = a.field();
    if field.is_ratfun() {
        return tame_hilbert(a, b, v);
    }
    if !field.is_rationals() {
        return Err(Error::UnsupportedField(format!("Hilbert symbols over {field}")));
    }
    v.check(field)?;
    let (x, y) = (int_class(a)?, int_class(b)?);
    match v {
        Place::Real => Ok(if x.is_negative() && y.is_negative() { -1 } else { 1 }),
        Place::OddPrime(p) => {
            let (al, u) = split(&x, *p);
            let (be, w) = split(&y, *p);
            let e = ((p - 1) / 2) % 2;
            let mut s: i8 = if (al as u64 * be as u64 * e) % 2 == 1 { -1 } else { 1 };
            if be % 2 == 1 {
                s *= legendre(&u, *p)?;
            }
            if al % 2 == 1 {
                s *= legendre(&w, *p)?;
            }
            Ok(s)
        }
        Place::Two => {
            let (al, u) = split(&x, 2);
            let (be, w) = split(&y, 2);
            let e = eps(&u) * eps(&w) + al as u64 * omega(&w) + be as u64 * omega(&u);
            Ok(if e % 2 == 1 { -1 } else { 1 })
        }
        _ => unreachable!(),
    }
}

fn tame_hilbert(a: &FieldElem, b: &FieldElem, v: &Place) -> Result<i8> {
    let (u, al) = normalize_at(a, v, None)?;
    let (w, be) = normalize_at(b, v, None)?;
    let k = residue_field(a.field(), v)?;
    let sign = k.from_i64(if (al * be) % 2 == 0 { 1 } else { -1 });
    let t = sign
        .mul(&reduce_unit(&u, v)?.pow(be)?)
        .mul(&reduce_unit(&w, v)?.pow(-al)?);
    Ok(if is_square(&t)? { 1 } else { -1 })
}

/// Whether `x` is a square in the completion at `v`.
pub fn is_local_square(x: &FieldElem, v: &Place) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    match v {
        Place::Real => Ok(x.sign().ok_or(Error::FieldMismatch)? > 0),
        Place::Two => {
            let (_, u) = split(&int_class(x)?, 2);
            Ok(valuation(x, v)? % 2 == 0 && mod8(&u) == 1)
        }
        _ => {
            let (u, i) = normalize_at(x, v, None)?;
            Ok(i % 2 == 0 && is_square(&reduce_unit(&u, v)?)?)
        }
    }
}
