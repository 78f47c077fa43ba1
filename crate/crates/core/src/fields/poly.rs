//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficients are stored low degree first, reduced into `[0, p)`, with no
//! trailing zeros. The modulus is passed explicitly to every operation.

use std::fmt;

use super::integer::inv_mod;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::from_coeffs(vec![c], p)
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `x - r`.
    pub fn linear(r: u64, p: u64) -> Self {
        Self::from_coeffs(vec![(p - r % p) % p, 1], p)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Degree; the zero polynomial has none.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly, p: u64) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % p).collect();
        Self::from_coeffs(v, p)
    }

    pub fn neg(&self, p: u64) -> Poly {
        Self::from_coeffs(self.coeffs.iter().map(|&c| (p - c) % p).collect(), p)
    }

    pub fn sub(&self, o: &Poly, p: u64) -> Poly {
        self.add(&o.neg(p), p)
    }

    pub fn scale(&self, c: u64, p: u64) -> Poly {
        let c = c % p;
        Self::from_coeffs(self.coeffs.iter().map(|&a| mulm(a, c, p)).collect(), p)
    }

    pub fn mul(&self, o: &Poly, p: u64) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mulm(a, b, p)) % p;
            }
        }
        Self::from_coeffs(v, p)
    }

    pub fn pow(&self, mut e: u64, p: u64) -> Poly {
        let mut acc = Poly::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, p);
            }
            b = b.mul(&b, p);
            e >>= 1;
        }
        acc
    }

    pub fn divrem(&self, d: &Poly, p: u64) -> Result<(Poly, Poly)> {
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        let inv = inv_mod(d.lead(), p).ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mulm(r[i + dd], inv, p);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mulm(c, b, p)) % p;
            }
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q, p), Self::from_coeffs(r, p)))
    }

    pub fn rem(&self, d: &Poly, p: u64) -> Result<Poly> {
        Ok(self.divrem(d, p)?.1)
    }

    /// `(lead, monic)` with `self = lead * monic`; zero maps to `(0, 0)`.
    pub fn monic(&self, p: u64) -> (u64, Poly) {
        if self.is_zero() {
            return (0, Poly::zero());
        }
        let lc = self.lead();
        (lc, self.scale(inv_mod(lc, p).unwrap(), p))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly, p: u64) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p).unwrap();
            a = b;
            b = r;
        }
        a.monic(p).1
    }

    /// `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Poly, p: u64) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, p).unwrap();
            let s = s0.sub(&q.mul(&s1, p), p);
            let t = t0.sub(&q.mul(&t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lead(), p).unwrap();
        (r0.scale(inv, p), s0.scale(inv, p), t0.scale(inv, p))
    }

    /// Inverse of `self` modulo `m`.
    pub fn inv_mod(&self, m: &Poly, p: u64) -> Result<Poly> {
        let (g, s, _) = self.rem(m, p)?.ext_gcd(m, p);
        if !g.is_one() {
            return Err(Error::DivisionByZero);
        }
        s.rem(m, p)
    }

    pub fn mul_mod(&self, o: &Poly, m: &Poly, p: u64) -> Poly {
        self.mul(o, p).rem(m, p).unwrap()
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly, p: u64) -> Poly {
        let mut acc = Poly::one().rem(m, p).unwrap();
        let mut b = self.rem(m, p).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&b, m, p);
            }
            b = b.mul_mod(&b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64, p: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mulm(acc, x, p) + c) % p)
    }

    pub fn derivative(&self, p: u64) -> Poly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, i as u64 % p, p))
            .collect();
        Self::from_coeffs(v, p)
    }

    /// Integer code `sum c_i p^i`, used to enumerate residue rings.
    pub fn code(&self, p: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn from_code(mut code: u64, p: u64) -> Poly {
        let mut v = Vec::new();
        while code > 0 {
            v.push(code % p);
            code /= p;
        }
        Self::from_coeffs(v, p)
    }

    /// Degree first, then coefficients from the top down.
    pub fn cmp_graded(&self, o: &Poly) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }

    pub fn display_in(&self, var: &str) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, var: var.to_string() }
    }
}

pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Monic irreducible polynomials of degree `d`, in increasing code order.
pub fn monic_irreducibles(d: usize, p: u64) -> impl Iterator<Item = Poly> {
    let start = p.pow(d as u32);
    (start..2 * start).map(move |c| Poly::from_code(c, p)).filter(move |f| is_irreducible(f, p))
}

/// Irreducibility by the gcd test `gcd(x^(p^i) - x, f) = 1` for `i <= deg/2`.
pub fn is_irreducible(f: &Poly, p: u64) -> bool {
    let n = match f.deg() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let x = Poly::x();
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        xp = xp.pow_mod(p, f, p);
        if !xp.sub(&x, p).gcd(f, p).is_one() {
            return false;
        }
    }
    true
}

/// Factorization `f = lead * prod(g^e)` into monic irreducibles, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFactorization {
    pub lead: u64,
    pub factors: Vec<(Poly, u32)>,
}

/// Default cap on candidate divisors tried during polynomial factorization.
pub const DEFAULT_POLY_TRIAL_BOUND: u64 = 1_000_000;

/// Trial division by monic polynomials of increasing degree.
pub fn factor_poly(f: &Poly, p: u64) -> Result<PolyFactorization> {
    factor_poly_with_bound(f, p, DEFAULT_POLY_TRIAL_BOUND)
}

pub fn factor_poly_with_bound(f: &Poly, p: u64, bound: u64) -> Result<PolyFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    let (lead, mut m) = f.monic(p);
    let mut factors = Vec::new();
    let mut tried = 0u64;
    let mut d = 1usize;
    while m.deg().unwrap() >= 2 * d {
        let start = p.pow(d as u32);
        for c in start..2 * start {
            tried += 1;
            if tried > bound {
                return Err(Error::FactorizationBound);
            }
            let g = Poly::from_code(c, p);
            let mut e = 0;
            loop {
                let (q, r) = m.divrem(&g, p).unwrap();
                if !r.is_zero() {
                    break;
                }
                m = q;
                e += 1;
            }
            if e > 0 {
                factors.push((g, e));
            }
            if m.deg().unwrap() < 2 * d {
                break;
            }
        }
        d += 1;
    }
    if !m.is_one() {
        factors.push((m, 1));
    }
    factors.sort_by(|a, b| a.0.cmp_graded(&b.0));
    Ok(PolyFactorization { lead, factors })
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: String,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.poly.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{}", self.var)?,
                (1, c) => write!(f, "{c}*{}", self.var)?,
                (i, 1) => write!(f, "{}^{i}", self.var)?,
                (i, c) => write!(f, "{c}*{}^{i}", self.var)?,
            }
        }
        Ok(())
    }
}
