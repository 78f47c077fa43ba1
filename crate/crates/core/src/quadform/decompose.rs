//! Splitting a represented value as `phi(v) + psi(w)` with both parts units.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::QuadForm;
use crate::error::{Error, Result};
use crate::fields::{sqrt, FieldElem};

pub const DEFAULT_HEIGHT_BOUND: u64 = 50;

/// Cap on candidate vectors per rational witness search.
const WITNESS_CANDIDATES: usize = 200_000;

type Split = (Vec<FieldElem>, Vec<FieldElem>);

/// `a = phi(v) + psi(w)` with `phi(v)` and `psi(w)` units. Finite fields are
/// searched exhaustively, so `None` is definitive there; over `Q` values and
/// vectors are searched up to the height bound.
pub fn decompose_value(phi: &QuadForm, psi: &QuadForm, a: &FieldElem, height: u64) -> Result<Option<Split>> {
    phi.field().require_same(psi.field())?;
    let f = phi.field();
    if !phi.orth_sum(psi)?.represents(a)? {
        return Err(Error::NotRepresented);
    }
    if f.is_finite() {
        for x in f.units()? {
            let y = a.sub(&x);
            if y.is_zero() || phi.rank() == 0 || psi.rank() == 0 {
                continue;
            }
            if phi.represents(&x)? && psi.represents(&y)? {
                let v = phi.representation(&x)?.unwrap();
                let w = psi.representation(&y)?.unwrap();
                return Ok(Some((v, w)));
            }
        }
        return Ok(None);
    }
    if !f.is_rationals() {
        return Err(Error::UnsupportedField(f.to_string()));
    }
    for x in rationals_by_height(height) {
        let x = f.from_rational(&x)?;
        let y = a.sub(&x);
        if x.is_zero() || y.is_zero() || phi.rank() == 0 || psi.rank() == 0 {
            continue;
        }
        if !(phi.represents(&x)? && psi.represents(&y)?) {
            continue;
        }
        if let (Some(v), Some(w)) = (rational_witness(phi, &x, height)?, rational_witness(psi, &y, height)?) {
            return Ok(Some((v, w)));
        }
    }
    Ok(None)
}

/// Rationals of height `max(|n|, d)` at most `h`, by increasing height, then
/// numerator.
pub fn rationals_by_height(h: u64) -> Vec<BigRational> {
    let mut out = vec![BigRational::from_integer(BigInt::from(0))];
    for k in 1..=h as i64 {
        let mut level = Vec::new();
        for d in 1..=k {
            for n in [-k, k] {
                if n.gcd(&d) == 1 {
                    level.push((n, d));
                }
            }
        }
        for n in -(k - 1)..=(k - 1) {
            if n != 0 && n.gcd(&k) == 1 {
                level.push((n, k));
            }
        }
        level.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
        level.dedup();
        out.extend(level.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())));
    }
    out
}

/// A rational vector with `q(v) = c`: the last coordinate is solved by a
/// square root, the others range over small heights.
fn rational_witness(q: &QuadForm, c: &FieldElem, height: u64) -> Result<Option<Vec<FieldElem>>> {
    let f = q.field();
    let a = q.entries();
    let r = a.len();
    let last = &a[r - 1];
    if r == 1 {
        return Ok(sqrt(&c.div(last)?)?.map(|x| vec![x]));
    }
    let mut pool = rationals_by_height(height);
    let per = (WITNESS_CANDIDATES as f64).powf(1.0 / (r - 1) as f64) as usize;
    pool.truncate(per.max(2));
    let pool: Vec<FieldElem> = pool.iter().map(|x| f.from_rational(x)).collect::<Result<_>>()?;
    let mut idx = vec![0usize; r - 1];
    loop {
        let head: Vec<FieldElem> = idx.iter().map(|&i| pool[i].clone()).collect();
        let mut rest = c.clone();
        for (ai, x) in a.iter().zip(&head) {
            rest = rest.sub(&ai.mul(&x.square()));
        }
        if let Some(z) = sqrt(&rest.div(last)?)? {
            let mut v = head;
            v.push(z);
            return Ok(Some(v));
        }
        let mut k = r - 2;
        loop {
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldDesc;

    #[test]
    fn finite_examples() {
        let f7 = FieldDesc::prime(7).unwrap();
        let one = QuadForm::from_i64(&f7, &[1]).unwrap();
        let (v, w) = decompose_value(&one, &one, &f7.from_i64(2), DEFAULT_HEIGHT_BOUND).unwrap().unwrap();
        assert_eq!((v, w), (vec![f7.one()], vec![f7.one()]));
        let f3 = FieldDesc::prime(3).unwrap();
        let one = QuadForm::from_i64(&f3, &[1]).unwrap();
        assert_eq!(decompose_value(&one, &one, &f3.one(), DEFAULT_HEIGHT_BOUND).unwrap(), None);
        let f5 = FieldDesc::prime(5).unwrap();
        let one5 = QuadForm::from_i64(&f5, &[1]).unwrap();
        assert_eq!(decompose_value(&one5, &one5, &f5.one(), DEFAULT_HEIGHT_BOUND).unwrap(), None);
    }

    #[test]
    fn rational_split() {
        let q = FieldDesc::rationals();
        let one = QuadForm::from_i64(&q, &[1]).unwrap();
        let (v, w) = decompose_value(&one, &one, &q.from_i64(2), DEFAULT_HEIGHT_BOUND).unwrap().unwrap();
        assert_eq!(one.eval(&v).unwrap().add(&one.eval(&w).unwrap()), q.from_i64(2));
        assert_eq!(decompose_value(&one, &one, &q.from_i64(3), 10), Err(Error::NotRepresented));
    }

    #[test]
    fn height_order() {
        let r = rationals_by_height(2);
        let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["0", "-1", "1", "-2", "-1/2", "1/2", "2"]);
    }
}
