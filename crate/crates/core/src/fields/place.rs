//! Places of `Q` and `F_p(t)`: valuations, uniformizers, residue fields.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Signed;

use super::integer::{self, inv_mod};
use super::poly::{self, Poly};
use super::{FieldDesc, FieldElem, FieldKind, Value};
use crate::error::{Error, Result};

/// A place of `Q` (`Real`, `Two`, `OddPrime`) or of `F_p(t)` (`Irreducible`
/// for a monic irreducible polynomial, `Infinity` with uniformizer `1/t`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Real,
    Two,
    OddPrime(u64),
    Irreducible(Poly),
    Infinity,
}

impl Place {
    fn rank(&self) -> u8 {
        match self {
            Place::Real => 0,
            Place::Two => 1,
            Place::OddPrime(_) => 2,
            Place::Irreducible(_) => 3,
            Place::Infinity => 4,
        }
    }

    /// `2` maps to `Two`, odd primes to `OddPrime`.
    pub fn prime(p: u64) -> Result<Place> {
        if p == 2 {
            return Ok(Place::Two);
        }
        if !integer::is_prime_u64(p) {
            return Err(Error::UnsupportedPlace(format!("{p} is not prime")));
        }
        Ok(Place::OddPrime(p))
    }

    /// Monic associate of an irreducible polynomial.
    pub fn irreducible(f: &Poly, p: u64) -> Result<Place> {
        let m = f.monic(p).1;
        if !poly::is_irreducible(&m, p) {
            return Err(Error::UnsupportedPlace(format!("{} is not irreducible", m.display_in("t"))));
        }
        Ok(Place::Irreducible(m))
    }

    /// Checks that the place belongs to `field`.
    pub fn check(&self, field: &FieldDesc) -> Result<()> {
        let ok = match (field.kind(), self) {
            (FieldKind::Rationals, Place::Real | Place::Two) => true,
            (FieldKind::Rationals, Place::OddPrime(p)) => *p != 2 && integer::is_prime_u64(*p),
            (FieldKind::RatFunField(_), Place::Infinity) => true,
            (FieldKind::RatFunField(p), Place::Irreducible(f)) => {
                f.is_monic() && poly::is_irreducible(f, *p)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedPlace(format!("{self} is not a place of {field}")))
        }
    }

    pub fn is_discrete(&self) -> bool {
        !matches!(self, Place::Real)
    }

    /// Parses `7`, `2`, `real`, `poly(t^2+1)`, `inf` relative to `field`.
    pub fn parse(s: &str, field: &FieldDesc) -> Result<Place> {
        let s = s.trim();
        let bad = || Error::Parse { pos: 0, expected: "place: prime, real, poly(...), inf".into() };
        let place = match field.kind() {
            FieldKind::Rationals if s == "real" => Place::Real,
            FieldKind::Rationals => Place::prime(s.parse().map_err(|_| bad())?)?,
            FieldKind::RatFunField(_) if s == "inf" => Place::Infinity,
            FieldKind::RatFunField(p) => {
                let inner = s.strip_prefix("poly(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                Place::irreducible(&super::parse_poly(inner, *p, 't', 5)?, *p)?
            }
            _ => return Err(Error::UnsupportedField(format!("{field} has no places"))),
        };
        place.check(field)?;
        Ok(place)
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Place {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Place::OddPrime(a), Place::OddPrime(b)) => a.cmp(b),
            (Place::Irreducible(a), Place::Irreducible(b)) => a.cmp_graded(b),
            _ => self.rank().cmp(&o.rank()),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Two => write!(f, "2"),
            Place::OddPrime(p) => write!(f, "{p}"),
            Place::Irreducible(g) => write!(f, "poly({})", g.display_in("t")),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

fn poly_valuation(f: &Poly, g: &Poly, p: u64) -> i64 {
    let mut v = 0;
    let mut m = f.clone();
    loop {
        let (q, r) = m.divrem(g, p).unwrap();
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Normalized valuation of a nonzero element.
pub fn valuation(x: &FieldElem, v: &Place) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    v.check(x.field())?;
    let p = x.field().characteristic();
    match (x.value(), v) {
        (Value::Rat(r), Place::Two) => {
            Ok(integer::valuation(r.numer(), 2) as i64 - integer::valuation(r.denom(), 2) as i64)
        }
        (Value::Rat(r), Place::OddPrime(q)) => {
            Ok(integer::valuation(r.numer(), *q) as i64 - integer::valuation(r.denom(), *q) as i64)
        }
        (Value::RatFun(r), Place::Irreducible(g)) => {
            Ok(poly_valuation(r.num(), g, p) - poly_valuation(r.den(), g, p))
        }
        (Value::RatFun(r), Place::Infinity) => Ok(-r.degree().unwrap()),
        _ => Err(Error::UnsupportedPlace(format!("{v} has no valuation"))),
    }
}

/// Default uniformizer: `p`, `2`, the monic `pi`, or `1/t`.
pub fn default_uniformizer(field: &FieldDesc, v: &Place) -> Result<FieldElem> {
    v.check(field)?;
    match v {
        Place::Two => Ok(field.from_i64(2)),
        Place::OddPrime(q) => Ok(field.from_i64(*q as i64)),
        Place::Irreducible(g) => field.from_poly(g.clone()),
        Place::Infinity => field.generator('t').unwrap().inv(),
        Place::Real => Err(Error::UnsupportedPlace("real place has no uniformizer".into())),
    }
}

/// `x = u * pi^i` with `u` a unit at `v`.
pub fn normalize_at(x: &FieldElem, v: &Place, pi: Option<&FieldElem>) -> Result<(FieldElem, i64)> {
    let i = valuation(x, v)?;
    let pi = match pi {
        Some(pi) => {
            if valuation(pi, v)? != 1 {
                return Err(Error::UnsupportedPlace(format!("{pi} is not a uniformizer at {v}")));
            }
            pi.clone()
        }
        None => default_uniformizer(x.field(), v)?,
    };
    Ok((x.div(&pi.pow(i)?)?, i))
}

/// Residue field: `F_p` at a prime of `Q`, at a linear place, and at infinity;
/// `F_p[x]/(pi)` at an irreducible place of degree at least 2.
pub fn residue_field(field: &FieldDesc, v: &Place) -> Result<FieldDesc> {
    v.check(field)?;
    let p = field.characteristic();
    match v {
        Place::OddPrime(q) => FieldDesc::prime(*q),
        Place::Irreducible(g) if g.deg() == Some(1) => FieldDesc::prime(p),
        Place::Irreducible(g) => FieldDesc::ext(p, g.clone()),
        Place::Infinity => FieldDesc::prime(p),
        Place::Two => Err(Error::UnsupportedPlace("residue field at 2 has characteristic 2".into())),
        Place::Real => Err(Error::UnsupportedPlace("real place has no residue field".into())),
    }
}

fn reduce_poly(f: &Poly, v: &Place, k: &FieldDesc, p: u64) -> Result<FieldElem> {
    match v {
        Place::Irreducible(g) if g.deg() == Some(1) => {
            let root = (p - g.coeff(0)) % p;
            Ok(k.from_i64(f.eval(root, p) as i64))
        }
        Place::Irreducible(_) => k.from_poly(f.clone()),
        _ => unreachable!(),
    }
}

/// Image of a `v`-unit in the residue field.
pub fn reduce_unit(u: &FieldElem, v: &Place) -> Result<FieldElem> {
    if valuation(u, v)? != 0 {
        return Err(Error::UnsupportedPlace(format!("{u} is not a unit at {v}")));
    }
    let k = residue_field(u.field(), v)?;
    let p = u.field().characteristic();
    match (u.value(), v) {
        (Value::Rat(r), Place::OddPrime(q)) => {
            let n = integer::reduce_mod(r.numer(), *q);
            let d = integer::reduce_mod(r.denom(), *q);
            Ok(k.from_i64(poly::mulm(n, inv_mod(d, *q).unwrap(), *q) as i64))
        }
        (Value::RatFun(r), Place::Infinity) => {
            let c = poly::mulm(r.num().lead(), inv_mod(r.den().lead(), p).unwrap(), p);
            Ok(k.from_i64(c as i64))
        }
        (Value::RatFun(r), Place::Irreducible(_)) => {
            reduce_poly(r.num(), v, &k, p)?.div(&reduce_poly(r.den(), v, &k, p)?)
        }
        _ => unreachable!(),
    }
}

/// A `v`-unit of `field` reducing to `a`: small integers, constants, or
/// polynomials of degree below `deg pi`.
pub fn lift_residue(a: &FieldElem, field: &FieldDesc, v: &Place) -> Result<FieldElem> {
    match (a.value(), v) {
        (Value::Fp(c), Place::OddPrime(_)) => {
            let c = *c as i64;
            // symmetric lift keeps -1 as -1
            let q = a.field().characteristic() as i64;
            Ok(field.from_i64(if 2 * c > q { c - q } else { c }))
        }
        (Value::Fp(c), Place::Irreducible(_) | Place::Infinity) => Ok(field.from_i64(*c as i64)),
        (Value::Ext(f), Place::Irreducible(_)) => field.from_poly(f.clone()),
        _ => Err(Error::UnsupportedPlace(format!("cannot lift {a:?} to {v}"))),
    }
}

/// Places where some of `xs` has nonzero valuation. `Two` and `Infinity` are
/// included only when some valuation there is nonzero.
pub fn support_places(xs: &[FieldElem]) -> Result<Vec<Place>> {
    let mut out = std::collections::BTreeSet::new();
    for x in xs {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let p = x.field().characteristic();
        match x.value() {
            Value::Rat(r) => {
                for n in [r.numer(), r.denom()] {
                    for (q, _) in integer::factor_integer(&n.abs())?.factors {
                        out.insert(Place::prime(q)?);
                    }
                }
            }
            Value::RatFun(r) => {
                for f in [r.num(), r.den()] {
                    for (g, _) in poly::factor_poly(f, p)?.factors {
                        out.insert(Place::Irreducible(g));
                    }
                }
                if r.degree() != Some(0) {
                    out.insert(Place::Infinity);
                }
            }
            _ => return Err(Error::UnsupportedField(format!("{} has no places", x.field()))),
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        let q = FieldDesc::rationals();
        let v = Place::OddPrime(7);
        assert_eq!(normalize_at(&q.from_i64(14), &v, None).unwrap(), (q.from_i64(2), 1));
        assert_eq!(normalize_at(&q.from_i64(3), &v, None).unwrap(), (q.from_i64(3), 0));
        let f = FieldDesc::ratfun(3).unwrap();
        let t = f.generator('t').unwrap();
        let place = Place::irreducible(&Poly::x(), 3).unwrap();
        assert_eq!(normalize_at(&t.pow(3).unwrap(), &place, None).unwrap(), (f.one(), 3));
    }

    #[test]
    fn valuations_at_infinity() {
        let f = FieldDesc::ratfun(5).unwrap();
        let x = f.parse_elem("(t^2+1)/(t^5+t)").unwrap();
        assert_eq!(valuation(&x, &Place::Infinity).unwrap(), 3);
        let (u, i) = normalize_at(&x, &Place::Infinity, None).unwrap();
        assert_eq!(i, 3);
        assert_eq!(reduce_unit(&u, &Place::Infinity).unwrap(), FieldDesc::prime(5).unwrap().one());
    }

    #[test]
    fn residue_fields() {
        let f = FieldDesc::ratfun(3).unwrap();
        let g = Poly::from_coeffs(vec![1, 0, 1], 3);
        let v = Place::irreducible(&g, 3).unwrap();
        let k = residue_field(&f, &v).unwrap();
        assert_eq!(k.order(), Some(9));
        let t = f.generator('t').unwrap();
        // t reduces to a square root of -1
        let tb = reduce_unit(&t, &v).unwrap();
        assert_eq!(tb.square(), k.from_i64(-1));
        let lin = Place::irreducible(&Poly::linear(2, 3), 3).unwrap();
        assert_eq!(reduce_unit(&t, &lin).unwrap(), FieldDesc::prime(3).unwrap().from_i64(2));
    }

    #[test]
    fn parse_places() {
        let q = FieldDesc::rationals();
        assert_eq!(Place::parse("7", &q).unwrap(), Place::OddPrime(7));
        assert_eq!(Place::parse("2", &q).unwrap(), Place::Two);
        assert_eq!(Place::parse("real", &q).unwrap(), Place::Real);
        assert!(Place::parse("9", &q).is_err());
        let f = FieldDesc::ratfun(3).unwrap();
        let v = Place::parse("poly(t^2+1)", &f).unwrap();
        assert_eq!(v.to_string(), "poly(t^2+1)");
        assert!(Place::parse("poly(t^2+2)", &f).is_err()); // t^2+2 = (t+1)(t+2) mod 3
        assert_eq!(Place::parse("inf", &f).unwrap(), Place::Infinity);
    }

    #[test]
    fn support_examples() {
        let q = FieldDesc::rationals();
        let s = support_places(&[q.one(), q.from_i64(12)]).unwrap();
        assert_eq!(s, vec![Place::Two, Place::OddPrime(3)]);
        assert!(support_places(&[q.one(), q.one()]).unwrap().is_empty());
    }
}
