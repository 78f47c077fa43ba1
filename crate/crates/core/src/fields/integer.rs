//! Integer number theory: trial-division factorization, square-free parts,
//! Legendre symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default trial-division bound for integer factorization.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// `n = unit * prod(p^e)` with `unit` in {1, -1} and primes ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntFactorization {
    pub unit: i8,
    pub factors: Vec<(u64, u32)>,
}

impl IntFactorization {
    pub fn expand(&self) -> BigInt {
        let mut acc = BigInt::from(self.unit);
        for &(p, e) in &self.factors {
            acc *= BigInt::from(p).pow(e);
        }
        acc
    }
}

pub fn factor_integer(n: &BigInt) -> Result<IntFactorization> {
    factor_integer_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// Trial division by every `d <= bound`. Whatever survives is prime when it is
/// below `(bound + 1)^2`; otherwise the factorization is refused.
pub fn factor_integer_with_bound(n: &BigInt, bound: u64) -> Result<IntFactorization> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let unit = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors = Vec::new();

    let mut d: u64 = 2;
    while d <= bound {
        let dd = BigInt::from(d);
        if &dd * &dd > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(IntFactorization { unit, factors });
    }
    let d = BigInt::from(d);
    if &d * &d > m {
        let p = m.to_u64().ok_or(Error::FactorizationBound)?;
        factors.push((p, 1));
        return Ok(IntFactorization { unit, factors });
    }
    Err(Error::FactorizationBound)
}

/// Signed square-free part of a nonzero integer.
pub fn square_free_part(n: &BigInt) -> Result<BigInt> {
    let f = factor_integer(n)?;
    let mut acc = BigInt::from(f.unit);
    for (p, e) in f.factors {
        if e % 2 == 1 {
            acc *= p;
        }
    }
    Ok(acc)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128 % m;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Reduce an integer into `[0, p)`.
pub fn reduce_mod(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Legendre symbol `(a / p)` for an odd prime `p` not dividing `a`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    let r = reduce_mod(a, p);
    if r == 0 {
        return Err(Error::DividesModulus);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let pp = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pp);
        if !r.is_zero() || m.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_legendre(a: i64, p: u64) -> i8 {
        let r = a.rem_euclid(p as i64) as u64;
        if (1..p).any(|y| y * y % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn factor_examples() {
        let f = factor_integer(&BigInt::from(12)).unwrap();
        assert_eq!(f.factors, vec![(2, 2), (3, 1)]);
        assert_eq!(f.unit, 1);
        let f = factor_integer(&BigInt::from(-1)).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.unit, -1);
        assert_eq!(factor_integer(&BigInt::zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn factor_large_prime_cofactor() {
        // 999983 is prime; its square exceeds the trial bound.
        let n = BigInt::from(999_983u64) * BigInt::from(999_983u64) * 6;
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.expand(), n);
        assert_eq!(f.factors, vec![(2, 1), (3, 1), (999_983, 2)]);
    }

    #[test]
    fn factor_bound_exceeded() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        assert_eq!(
            factor_integer_with_bound(&n, 100),
            Err(Error::FactorizationBound)
        );
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&BigInt::from(2), 7), Ok(1));
        assert_eq!(legendre(&BigInt::from(3), 7), Ok(-1));
        assert_eq!(legendre(&BigInt::from(1), 13), Ok(1));
        assert_eq!(legendre(&BigInt::from(14), 7), Err(Error::DividesModulus));
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p as i64 {
                assert_eq!(legendre(&BigInt::from(a), p).unwrap(), brute_legendre(a, p));
            }
        }
    }

    #[test]
    fn square_free_examples() {
        assert_eq!(square_free_part(&BigInt::from(12)).unwrap(), BigInt::from(3));
        assert_eq!(square_free_part(&BigInt::from(-50)).unwrap(), BigInt::from(-2));
    }
}
