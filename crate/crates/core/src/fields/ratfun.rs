//! Elements of `F_p(t)` as reduced fractions with monic denominator.

use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn from_poly(num: Poly) -> Self {
        RatFun { num, den: Poly::one() }
    }

    pub fn new(num: Poly, den: Poly, p: u64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Poly::zero()));
        }
        let g = num.gcd(&den, p);
        let num = num.divrem(&g, p)?.0;
        let den = den.divrem(&g, p)?.0;
        let (lc, den) = den.monic(p);
        let inv = super::integer::inv_mod(lc, p).unwrap();
        Ok(RatFun { num: num.scale(inv, p), den })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFun, p: u64) -> RatFun {
        let n = self.num.mul(&o.den, p).add(&o.num.mul(&self.den, p), p);
        Self::new(n, self.den.mul(&o.den, p), p).unwrap()
    }

    pub fn neg(&self, p: u64) -> RatFun {
        RatFun { num: self.num.neg(p), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFun, p: u64) -> RatFun {
        Self::new(self.num.mul(&o.num, p), self.den.mul(&o.den, p), p).unwrap()
    }

    pub fn inv(&self, p: u64) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone(), p)
    }

    /// `deg(num) - deg(den)`; the valuation at infinity is its negative.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.deg()? as i64 - self.den.deg().unwrap() as i64)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |q: &Poly| q.coeffs().iter().filter(|&&c| c != 0).count() > 1;
        let n = self.num.display_in("t").to_string();
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let d = self.den.display_in("t").to_string();
        let n = if wrap(&self.num) { format!("({n})") } else { n };
        let d = if wrap(&self.den) { format!("({d})") } else { d };
        write!(f, "{n}/{d}")
    }
}
