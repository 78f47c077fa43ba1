//! Witt classes held by canonical data.
//!
//! * finite field: rank parity `e0` and signed discriminant `e1`;
//! * `Q`: signature, second residues at odd primes, and the parity at 2 of
//!   the number of entries of odd 2-adic valuation;
//! * `F_p(t)`: first residue at infinity (uniformizer `1/t`) and second
//!   residues at monic irreducibles.
//!
//! Each tuple of data is realized by exactly one class, so equality of data
//! is equality in `W`.

mod gw;
mod oracle;
pub mod tables;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fields::hilbert::hilbert_symbol;
use crate::fields::place::{lift_residue, normalize_at, reduce_unit, residue_field, support_places, valuation};
use crate::fields::{square_class, FieldDesc, FieldElem, Place, SquareClass};
use crate::quadform::{split_args, LocalInvariants, PfisterForm, QuadForm};

pub use gw::{gw_from_pullback, iota_class, iota_equal, GWClass, IotaClass};
pub use oracle::{enumerate_witt_group, WittTable};
pub use tables::{ideal_group, iota_group, ClassGroup};

/// Witt class over a finite field.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FiniteWitt {
    e0: u8,
    e1: SquareClass,
}

impl FiniteWitt {
    pub fn zero(k: &FieldDesc) -> Self {
        FiniteWitt { e0: 0, e1: square_class(&k.one()).unwrap() }
    }

    /// `<u>`.
    pub fn unit(u: &FieldElem) -> Result<Self> {
        Ok(FiniteWitt { e0: 1, e1: square_class(u)? })
    }

    pub fn of_entries(k: &FieldDesc, entries: &[FieldElem]) -> Result<Self> {
        let mut acc = FiniteWitt::zero(k);
        for a in entries {
            acc = acc.add(&FiniteWitt::unit(a)?);
        }
        Ok(acc)
    }

    pub fn field(&self) -> &FieldDesc {
        self.e1.field()
    }

    pub fn e0(&self) -> u8 {
        self.e0
    }

    pub fn e1(&self) -> &SquareClass {
        &self.e1
    }

    pub fn is_zero(&self) -> bool {
        self.e0 == 0 && self.e1.is_trivial()
    }

    pub fn add(&self, o: &FiniteWitt) -> FiniteWitt {
        let mut e1 = self.e1.mul(&o.e1);
        if self.e0 == 1 && o.e0 == 1 {
            e1 = e1.neg();
        }
        FiniteWitt { e0: self.e0 ^ o.e0, e1 }
    }

    pub fn neg(&self) -> FiniteWitt {
        FiniteWitt { e0: self.e0, e1: if self.e0 == 1 { self.e1.neg() } else { self.e1.clone() } }
    }

    pub fn sub(&self, o: &FiniteWitt) -> FiniteWitt {
        self.add(&o.neg())
    }

    /// `<>`, `<e1>`, or `<1,-e1>`.
    pub fn rep_entries(&self) -> Vec<FieldElem> {
        let d = self.e1.rep().clone();
        match (self.e0, self.e1.is_trivial()) {
            (0, true) => Vec::new(),
            (1, _) => vec![d],
            _ => vec![self.field().one(), d.neg()],
        }
    }

    fn rep_string(&self) -> String {
        let parts: Vec<String> = self.rep_entries().iter().map(|a| a.to_string()).collect();
        format!("<{}>", parts.join(","))
    }

    /// Inverse of the `<a,b>` display.
    pub fn parse(k: &FieldDesc, s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('<')
            .and_then(|x| x.strip_suffix('>'))
            .ok_or(Error::Parse { pos: 0, expected: "<entries>".into() })?;
        let entries = split_args(inner, 1)?
            .iter()
            .map(|(o, a)| k.parse_elem_at(a, *o))
            .collect::<Result<Vec<_>>>()?;
        FiniteWitt::of_entries(k, &entries)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum WittData {
    Finite(FiniteWitt),
    Rational { sig: i64, res: BTreeMap<u64, FiniteWitt>, par2: u8 },
    RatFun { inf: FiniteWitt, res: BTreeMap<Place, FiniteWitt> },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WittClass {
    field: FieldDesc,
    data: WittData,
}

/// Second residue `sum i <u>` over entries `u pi^i` with `i` odd.
pub fn second_residue(entries: &[FieldElem], v: &Place, pi: Option<&FieldElem>) -> Result<FiniteWitt> {
    let f = entries.first().map(|a| a.field().clone());
    let Some(f) = f else {
        return Err(Error::UnsupportedPlace("empty form".into()));
    };
    let k = residue_field(&f, v)?;
    let mut acc = FiniteWitt::zero(&k);
    for a in entries {
        let (u, i) = normalize_at(a, v, pi)?;
        if i % 2 != 0 {
            acc = acc.add(&FiniteWitt::unit(&reduce_unit(&u, v)?)?);
        }
    }
    Ok(acc)
}

/// First residue `sum <u>` over entries `u pi^i` with `i` even.
pub fn first_residue(entries: &[FieldElem], v: &Place, pi: Option<&FieldElem>) -> Result<FiniteWitt> {
    let f = entries.first().map(|a| a.field().clone());
    let Some(f) = f else {
        return Err(Error::UnsupportedPlace("empty form".into()));
    };
    let k = residue_field(&f, v)?;
    let mut acc = FiniteWitt::zero(&k);
    for a in entries {
        let (u, i) = normalize_at(a, v, pi)?;
        if i % 2 == 0 {
            acc = acc.add(&FiniteWitt::unit(&reduce_unit(&u, v)?)?);
        }
    }
    Ok(acc)
}

/// Number of entries with odd 2-adic valuation, mod 2.
pub fn parity_at_two(entries: &[FieldElem]) -> Result<u8> {
    let mut c = 0u8;
    for a in entries {
        if valuation(a, &Place::Two)? % 2 != 0 {
            c ^= 1;
        }
    }
    Ok(c)
}

impl WittClass {
    pub fn zero(field: &FieldDesc) -> Result<Self> {
        WittClass::of_form(&QuadForm::empty(field))
    }

    pub fn of_form(q: &QuadForm) -> Result<Self> {
        let f = q.field().clone();
        let e = q.entries();
        let data = if f.is_finite() {
            WittData::Finite(FiniteWitt::of_entries(&f, e)?)
        } else if f.is_rationals() {
            let sig = e.iter().map(|a| a.sign().unwrap() as i64).sum();
            let mut res = BTreeMap::new();
            for v in support_places(e)? {
                if let Place::OddPrime(p) = v {
                    let r = second_residue(e, &v, None)?;
                    if !r.is_zero() {
                        res.insert(p, r);
                    }
                }
            }
            WittData::Rational { sig, res, par2: parity_at_two(e)? }
        } else {
            let k = FieldDesc::prime(f.characteristic())?;
            let inf = if e.is_empty() { FiniteWitt::zero(&k) } else { first_residue(e, &Place::Infinity, None)? };
            let mut res = BTreeMap::new();
            for v in support_places(e)? {
                if let Place::Irreducible(_) = v {
                    let r = second_residue(e, &v, None)?;
                    if !r.is_zero() {
                        res.insert(v, r);
                    }
                }
            }
            WittData::RatFun { inf, res }
        };
        Ok(WittClass { field: f, data })
    }

    pub fn of_entries(field: &FieldDesc, entries: &[i64]) -> Result<Self> {
        QuadForm::from_i64(field, entries)?.witt_class()
    }

    pub fn pfister(p: &PfisterForm) -> Result<Self> {
        p.expand().witt_class()
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn data(&self) -> &WittData {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            WittData::Finite(w) => w.is_zero(),
            WittData::Rational { sig, res, par2 } => *sig == 0 && res.is_empty() && *par2 == 0,
            WittData::RatFun { inf, res } => inf.is_zero() && res.is_empty(),
        }
    }

    pub fn signature(&self) -> Option<i64> {
        match &self.data {
            WittData::Rational { sig, .. } => Some(*sig),
            _ => None,
        }
    }

    pub fn add(&self, o: &WittClass) -> Result<WittClass> {
        self.field.require_same(&o.field)?;
        let data = match (&self.data, &o.data) {
            (WittData::Finite(a), WittData::Finite(b)) => WittData::Finite(a.add(b)),
            (
                WittData::Rational { sig: s1, res: r1, par2: p1 },
                WittData::Rational { sig: s2, res: r2, par2: p2 },
            ) => WittData::Rational { sig: s1 + s2, res: merge(r1, r2), par2: p1 ^ p2 },
            (WittData::RatFun { inf: i1, res: r1 }, WittData::RatFun { inf: i2, res: r2 }) => {
                WittData::RatFun { inf: i1.add(i2), res: merge(r1, r2) }
            }
            _ => return Err(Error::FieldMismatch),
        };
        Ok(WittClass { field: self.field.clone(), data })
    }

    pub fn neg(&self) -> WittClass {
        let data = match &self.data {
            WittData::Finite(a) => WittData::Finite(a.neg()),
            WittData::Rational { sig, res, par2 } => WittData::Rational {
                sig: -sig,
                res: res.iter().map(|(p, r)| (*p, r.neg())).collect(),
                par2: *par2,
            },
            WittData::RatFun { inf, res } => WittData::RatFun {
                inf: inf.neg(),
                res: res.iter().map(|(v, r)| (v.clone(), r.neg())).collect(),
            },
        };
        WittClass { field: self.field.clone(), data }
    }

    pub fn sub(&self, o: &WittClass) -> Result<WittClass> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> WittClass {
        let mut acc = WittClass::zero(&self.field).unwrap();
        let base = if k < 0 { self.neg() } else { self.clone() };
        for _ in 0..k.unsigned_abs() {
            acc = acc.add(&base).unwrap();
        }
        acc
    }

    pub fn mul(&self, o: &WittClass) -> Result<WittClass> {
        self.representative()?.tensor(&o.representative()?)?.witt_class()
    }

    /// A diagonal form in this class, rebuilt from the canonical data.
    pub fn representative(&self) -> Result<QuadForm> {
        let f = &self.field;
        match &self.data {
            WittData::Finite(w) => QuadForm::new(f, w.rep_entries()),
            WittData::Rational { sig, res, par2 } => {
                let mut entries: Vec<FieldElem> = Vec::new();
                loop {
                    let cur = QuadForm::new(f, entries.clone())?.witt_class()?;
                    let WittData::Rational { res: cres, .. } = &cur.data else { unreachable!() };
                    let primes: BTreeSet<u64> = res.keys().chain(cres.keys()).copied().collect();
                    let bad = primes.iter().rev().find(|p| res.get(p) != cres.get(p));
                    let Some(&p) = bad else { break };
                    let k = FieldDesc::prime(p)?;
                    let want = res.get(&p).cloned().unwrap_or_else(|| FiniteWitt::zero(&k));
                    let have = cres.get(&p).cloned().unwrap_or_else(|| FiniteWitt::zero(&k));
                    // lifts have absolute value below p/2, so only smaller primes move
                    for u in want.sub(&have).rep_entries() {
                        let v = Place::OddPrime(p);
                        entries.push(lift_residue(&u, f, &v)?.mul(&f.from_i64(p as i64)));
                    }
                }
                if parity_at_two(&entries)? != *par2 {
                    entries.push(f.from_i64(2));
                }
                let cur: i64 = entries.iter().map(|a| a.sign().unwrap() as i64).sum();
                let d = sig - cur;
                let unit = f.from_i64(d.signum());
                entries.extend(std::iter::repeat_n(unit, d.unsigned_abs() as usize));
                QuadForm::new(f, entries)
            }
            WittData::RatFun { inf, res } => {
                let mut entries: Vec<FieldElem> = Vec::new();
                loop {
                    let cur = QuadForm::new(f, entries.clone())?.witt_class()?;
                    let WittData::RatFun { res: cres, .. } = &cur.data else { unreachable!() };
                    let places: BTreeSet<&Place> = res.keys().chain(cres.keys()).collect();
                    let bad = places.iter().rev().find(|v| res.get(**v) != cres.get(**v));
                    let Some(&v) = bad else { break };
                    let v = v.clone();
                    let k = residue_field(f, &v)?;
                    let want = res.get(&v).cloned().unwrap_or_else(|| FiniteWitt::zero(&k));
                    let have = cres.get(&v).cloned().unwrap_or_else(|| FiniteWitt::zero(&k));
                    let Place::Irreducible(g) = &v else { unreachable!() };
                    let pi = f.from_poly(g.clone())?;
                    // lifts have degree below deg pi, so only smaller places move
                    for u in want.sub(&have).rep_entries() {
                        entries.push(lift_residue(&u, f, &v)?.mul(&pi));
                    }
                }
                let k = inf.field().clone();
                let have =
                    if entries.is_empty() { FiniteWitt::zero(&k) } else { first_residue(&entries, &Place::Infinity, None)? };
                for u in inf.sub(&have).rep_entries() {
                    entries.push(lift_residue(&u, f, &Place::Infinity)?);
                }
                QuadForm::new(f, entries)
            }
        }
    }

    /// Rank parity.
    pub fn e0(&self) -> Result<u8> {
        Ok(match &self.data {
            WittData::Finite(w) => w.e0,
            WittData::Rational { sig, .. } => sig.rem_euclid(2) as u8,
            WittData::RatFun { .. } => (self.representative()?.rank() % 2) as u8,
        })
    }

    /// Signed discriminant class.
    pub fn e1(&self) -> Result<SquareClass> {
        match &self.data {
            WittData::Finite(w) => Ok(w.e1.clone()),
            _ => self.representative()?.signed_disc(),
        }
    }

    pub fn in_i_n(&self, n: i64) -> Result<bool> {
        if n <= 0 {
            return Ok(true);
        }
        if self.e0()? != 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        if !self.e1()?.is_trivial() {
            return Ok(false);
        }
        if n == 2 {
            return Ok(true);
        }
        match &self.data {
            // I^3 vanishes over finite fields and over F_p(t)
            WittData::Finite(_) | WittData::RatFun { .. } => Ok(self.is_zero()),
            WittData::Rational { sig, .. } => {
                if sig.rem_euclid(1i64 << n.min(62)) != 0 {
                    return Ok(false);
                }
                // I^3 of each finite completion vanishes, so the class must be
                // locally hyperbolic: Hasse invariant of k H
                let r = self.representative()?;
                let k = (r.rank() / 2) as i64;
                let m1 = self.field.from_i64(-1);
                for (v, eps) in LocalInvariants::of(&r)?.hasse() {
                    let h = hilbert_symbol(&m1, &m1, v)?;
                    let want = if (k * (k - 1) / 2) % 2 == 1 { h } else { 1 };
                    if *eps != want {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn from_json(field: &FieldDesc, v: &serde_json::Value) -> Result<WittClass> {
        let bad = || Error::Parse { pos: 0, expected: "serialized Witt class".into() };
        let data = if field.is_finite() {
            WittData::Finite(FiniteWitt::parse(field, v.as_str().ok_or_else(bad)?)?)
        } else if field.is_rationals() {
            let sig = v.get("sig").and_then(|x| x.as_i64()).ok_or_else(bad)?;
            let par2 = v.get("par2").and_then(|x| x.as_u64()).ok_or_else(bad)? as u8;
            let mut res = BTreeMap::new();
            for (p, r) in v.get("res").and_then(|x| x.as_object()).ok_or_else(bad)? {
                let p: u64 = p.parse().map_err(|_| bad())?;
                let k = FieldDesc::prime(p)?;
                let r = FiniteWitt::parse(&k, r.as_str().ok_or_else(bad)?)?;
                if !r.is_zero() {
                    res.insert(p, r);
                }
            }
            WittData::Rational { sig, res, par2 }
        } else {
            let k = FieldDesc::prime(field.characteristic())?;
            let inf = FiniteWitt::parse(&k, v.get("inf").and_then(|x| x.as_str()).ok_or_else(bad)?)?;
            let mut res = BTreeMap::new();
            for (p, r) in v.get("res").and_then(|x| x.as_object()).ok_or_else(bad)? {
                let place = Place::parse(p, field)?;
                let k = residue_field(field, &place)?;
                let r = FiniteWitt::parse(&k, r.as_str().ok_or_else(bad)?)?;
                if !r.is_zero() {
                    res.insert(place, r);
                }
            }
            WittData::RatFun { inf, res }
        };
        Ok(WittClass { field: field.clone(), data })
    }
}

fn merge<K: Ord + Clone>(a: &BTreeMap<K, FiniteWitt>, b: &BTreeMap<K, FiniteWitt>) -> BTreeMap<K, FiniteWitt> {
    let mut out = a.clone();
    for (k, w) in b {
        let s = match out.get(k) {
            Some(x) => x.add(w),
            None => w.clone(),
        };
        if s.is_zero() {
            out.remove(k);
        } else {
            out.insert(k.clone(), s);
        }
    }
    out
}

impl Serialize for WittClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.data {
            WittData::Finite(w) => s.serialize_str(&w.rep_string()),
            WittData::Rational { sig, res, par2 } => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("sig", sig)?;
                let r: BTreeMap<String, String> = res.iter().map(|(p, w)| (p.to_string(), w.rep_string())).collect();
                m.serialize_entry("res", &r)?;
                m.serialize_entry("par2", par2)?;
                m.end()
            }
            WittData::RatFun { inf, res } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("inf", &inf.rep_string())?;
                let r: BTreeMap<String, String> = res.iter().map(|(v, w)| (v.to_string(), w.rep_string())).collect();
                m.serialize_entry("res", &r)?;
                m.end()
            }
        }
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    #[test]
    fn witt_class_examples() {
        let q = FieldDesc::rationals();
        assert!(WittClass::of_entries(&q, &[7, -7]).unwrap().is_zero());
        let w = WittClass::of_entries(&q, &[1, 7]).unwrap();
        assert_eq!(w.signature(), Some(2));
        let WittData::Rational { res, par2, .. } = w.data() else { panic!() };
        assert_eq!(res.get(&7), Some(&FiniteWitt::unit(&gf(7).one()).unwrap()));
        assert_eq!(*par2, 0);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"sig":2,"res":{"7":"<1>"},"par2":0}"#);
        assert!(WittClass::of_entries(&gf(7), &[1, 1, 1, 1]).unwrap().is_zero());
    }

    #[test]
    fn finite_table() {
        let f7 = gf(7);
        let one = WittClass::of_entries(&f7, &[1]).unwrap();
        let orders: Vec<usize> = (1..=4).filter(|&k| one.scale(k).is_zero()).map(|k| k as usize).collect();
        assert_eq!(orders, vec![4]);
        let f5 = gf(5);
        assert!(WittClass::of_entries(&f5, &[1, 1]).unwrap().is_zero());
        assert!(WittClass::of_entries(&f5, &[2, 2]).unwrap().is_zero());
    }

    #[test]
    fn powers_of_fundamental_ideal() {
        let f7 = gf(7);
        let w = WittClass::of_entries(&f7, &[1, -3]).unwrap();
        assert!(w.in_i_n(1).unwrap());
        assert!(!w.in_i_n(2).unwrap());
        assert!(w.in_i_n(0).unwrap());
        let q = FieldDesc::rationals();
        let p = WittClass::pfister(&PfisterForm::from_i64(&q, &[-1, -1, -1]).unwrap()).unwrap();
        assert!(p.in_i_n(3).unwrap());
        assert!(!p.in_i_n(4).unwrap());
        let p2 = WittClass::pfister(&PfisterForm::from_i64(&q, &[3, 7]).unwrap()).unwrap();
        assert!(p2.in_i_n(2).unwrap());
        assert!(!p2.in_i_n(3).unwrap());
        // <<-1,-1,-1,-1>> lies in I^4
        let p4 = WittClass::pfister(&PfisterForm::from_i64(&q, &[-1, -1, -1, -1]).unwrap()).unwrap();
        assert!(p4.in_i_n(4).unwrap());
    }

    #[test]
    fn representatives_rebuild_the_class() {
        let q = FieldDesc::rationals();
        for e in [vec![1, 7], vec![3, 5, -11, 13], vec![2, 6, -10], vec![-1, -1, -1, 7 * 13], vec![]] {
            let w = WittClass::of_entries(&q, &e).unwrap();
            assert_eq!(w.representative().unwrap().witt_class().unwrap(), w);
        }
        let f = FieldDesc::ratfun(3).unwrap();
        let r = QuadForm::parse("diag(t,t^2+1,(t+1)/(t^2+2),2*t^3)@GF(3)(t)").unwrap();
        let w = r.witt_class().unwrap();
        assert_eq!(w.representative().unwrap().witt_class().unwrap(), w);
        let h = QuadForm::parse("diag(t,-t)@GF(3)(t)").unwrap();
        assert!(h.witt_class().unwrap().is_zero());
        let _ = f;
    }

    #[test]
    fn json_round_trip() {
        let q = FieldDesc::rationals();
        let w = WittClass::of_entries(&q, &[1, 7, -6, 10]).unwrap();
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(WittClass::from_json(&q, &v).unwrap(), w);
        let f = FieldDesc::ratfun(3).unwrap();
        let w = QuadForm::parse("diag(t^2+1,2*t)@GF(3)(t)").unwrap().witt_class().unwrap();
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(WittClass::from_json(&f, &v).unwrap(), w);
    }
}
