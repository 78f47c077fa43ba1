//! Second residue maps at discrete places of `Q` and `F_p(t)`.
//!
//! Witt residues use the diagonal formula `<u pi^i> |-> <u>` for odd `i`.
//! Symbol residues first rewrite every word so that only its first letter
//! has nonzero valuation, using
//!
//! ```text
//! {u pi^k}  = {pi^k} + {u} + eta {pi^k}{u}
//! {pi^k}    = {pi} + {pi^(k-1)} + eta {pi}{pi^(k-1)}          (k >= 2)
//! {pi^-1}   = -{pi} - eta {pi}{-1}
//! {a}{pi}   = eps {pi}{a},   eps = -1 - eta {-1}   (central)
//! {pi}{pi}  = {pi}{-1}
//! ```
//!
//! and then applies `eta^r {pi}{u_2..u_n} |-> eta^r {u_2..u_n}`, unit words
//! `|-> 0`. In Milnor K-theory every `eta` term is dropped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::place::{
    default_uniformizer, lift_residue, reduce_unit, residue_field, support_places, valuation,
};
use crate::fields::{FieldDesc, FieldElem, Place};
use crate::quadform::{PfisterForm, QuadForm};
use crate::symbolic::{GradedWord, SymbolExpr, Theory};
use crate::wittring::{parity_at_two, second_residue, FiniteWitt, WittClass};

pub use crate::fields::place::normalize_at as normalize_with;

/// A place together with a uniformizer of valuation 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniformizerChoice {
    pub place: Place,
    pub pi: FieldElem,
}

impl UniformizerChoice {
    pub fn default_at(field: &FieldDesc, place: &Place) -> Result<Self> {
        Ok(UniformizerChoice { place: place.clone(), pi: default_uniformizer(field, place)? })
    }

    pub fn new(place: &Place, pi: FieldElem) -> Result<Self> {
        if valuation(&pi, place)? != 1 {
            return Err(Error::UnsupportedPlace(format!("{pi} is not a uniformizer at {place}")));
        }
        Ok(UniformizerChoice { place: place.clone(), pi })
    }

    pub fn field(&self) -> &FieldDesc {
        self.pi.field()
    }

    pub fn residue_field(&self) -> Result<FieldDesc> {
        residue_field(self.field(), &self.place)
    }
}

/// `x = u pi^i` for the default uniformizer.
pub fn normalize_at(x: &FieldElem, v: &Place) -> Result<(FieldElem, i64)> {
    normalize_with(x, v, None)
}

/// `<x> = <u pi^(i mod 2)>`.
pub fn normalize_mod2(x: &FieldElem, u: &UniformizerChoice) -> Result<(FieldElem, i64)> {
    let (unit, i) = normalize_with(x, &u.place, Some(&u.pi))?;
    Ok((unit, i.rem_euclid(2)))
}

fn require_residue_place(u: &UniformizerChoice) -> Result<()> {
    match u.place {
        Place::Two => Err(Error::UnsupportedPlace("residues at 2 land in characteristic 2; use the parity".into())),
        Place::Real => Err(Error::UnsupportedPlace("real place is not discrete".into())),
        _ => Ok(()),
    }
}

pub fn finite_class(w: &FiniteWitt) -> Result<WittClass> {
    WittClass::of_form(&QuadForm::new(w.field(), w.rep_entries())?)
}

pub fn residue_witt(q: &QuadForm, u: &UniformizerChoice) -> Result<WittClass> {
    q.field().require_same(u.field())?;
    require_residue_place(u)?;
    if q.rank() == 0 {
        return WittClass::zero(&u.residue_field()?);
    }
    finite_class(&second_residue(q.entries(), &u.place, Some(&u.pi))?)
}

pub fn residue_witt_class(w: &WittClass, u: &UniformizerChoice) -> Result<WittClass> {
    residue_witt(&w.representative()?, u)
}

/// Rank parity of the entries with odd 2-adic valuation; stands in for the
/// residue at 2 over `Q`.
pub fn parity_two(q: &QuadForm) -> Result<u8> {
    if !q.field().is_rationals() {
        return Err(Error::UnsupportedField(format!("{} has no place 2", q.field())));
    }
    parity_at_two(q.entries())
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Letter {
    Pi,
    Unit(FieldElem),
}

type Words = BTreeMap<(u32, Vec<Letter>), BigInt>;

fn push(acc: &mut Words, eta: u32, letters: Vec<Letter>, c: BigInt) {
    let slot = acc.entry((eta, letters)).or_insert_with(BigInt::zero);
    *slot += c;
}

fn product(a: &Words, b: &Words, mw: bool) -> Words {
    let mut out = Words::new();
    for ((e1, l1), c1) in a {
        for ((e2, l2), c2) in b {
            if !mw && e1 + e2 > 0 {
                continue;
            }
            let mut l = l1.clone();
            l.extend(l2.iter().cloned());
            push(&mut out, e1 + e2, l, c1 * c2);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn sum(parts: &[&Words]) -> Words {
    let mut out = Words::new();
    for p in parts {
        for ((e, l), c) in p.iter() {
            push(&mut out, *e, l.clone(), c.clone());
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn single(eta: u32, letters: Vec<Letter>, c: i64) -> Words {
    let mut w = Words::new();
    push(&mut w, eta, letters, BigInt::from(c));
    w
}

/// `{pi^k}` in terms of `{pi}` and unit letters.
fn pi_power(k: i64, minus_one: &FieldElem, mw: bool) -> Words {
    // {pi^k} = k{pi} + floor(k/2) eta{pi}{-1}, {pi^-k} = -k{pi} - ceil(k/2) eta{pi}{-1}.
    let m = k.abs();
    let twists = if k >= 0 { m / 2 } else { (m + 1) / 2 };
    let mut out = Words::new();
    push(&mut out, 0, vec![Letter::Pi], BigInt::from(k));
    if mw {
        let c = if k >= 0 { twists } else { -twists };
        push(&mut out, 1, vec![Letter::Pi, Letter::Unit(minus_one.clone())], BigInt::from(c));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `{x}` for `x = u pi^k`.
fn expand_letter(x: &FieldElem, u: &UniformizerChoice, mw: bool) -> Result<Words> {
    let (unit, k) = normalize_with(x, &u.place, Some(&u.pi))?;
    let m1 = x.field().from_i64(-1);
    let p = pi_power(k, &m1, mw);
    if unit.is_one() {
        return Ok(p);
    }
    let ul = single(0, vec![Letter::Unit(unit)], 1);
    let eta = single(1, Vec::new(), 1);
    let cross = product(&product(&eta, &p, mw), &ul, mw);
    Ok(sum(&[&p, &ul, &cross]))
}

/// Rewrites one word until it is either unit-only or `{pi}` followed by units.
fn normalize_word(eta: u32, letters: Vec<Letter>, c: BigInt, m1: &FieldElem, mw: bool, out: &mut Words) {
    let mut stack = vec![(eta, letters, c)];
    while let Some((e, mut l, c)) = stack.pop() {
        let swap = (1..l.len()).find(|&p| l[p] == Letter::Pi && l[p - 1] != Letter::Pi);
        if let Some(p) = swap {
            l.swap(p - 1, p);
            if mw {
                let mut extra = l.clone();
                extra.push(Letter::Unit(m1.clone()));
                stack.push((e + 1, extra, -c.clone()));
            }
            stack.push((e, l, -c));
            continue;
        }
        if l.len() >= 2 && l[0] == Letter::Pi && l[1] == Letter::Pi {
            l[1] = Letter::Unit(m1.clone());
            stack.push((e, l, c));
            continue;
        }
        push(out, e, l, c);
    }
}

fn residue_symbol(e: &SymbolExpr, u: &UniformizerChoice, theory: Theory) -> Result<SymbolExpr> {
    if e.theory() != theory {
        return Err(Error::InvalidSymbol(format!("expected a {theory} expression, got {}", e.theory())));
    }
    e.field().require_same(u.field())?;
    require_residue_place(u)?;
    let mw = theory == Theory::MWK;
    let k = u.residue_field()?;
    let m1 = e.field().from_i64(-1);
    let mut normal = Words::new();
    for (w, c) in e.terms() {
        let mut acc = single(w.eta, Vec::new(), 1);
        for x in &w.letters {
            acc = product(&acc, &expand_letter(x, u, mw)?, mw);
        }
        for ((eta, letters), d) in acc {
            normalize_word(eta, letters, d * c, &m1, mw, &mut normal);
        }
    }
    let mut out = SymbolExpr::zero(theory, &k);
    for ((eta, letters), c) in normal {
        if c.is_zero() || letters.first() != Some(&Letter::Pi) {
            continue;
        }
        let rest = letters[1..]
            .iter()
            .map(|l| match l {
                Letter::Unit(a) => reduce_unit(a, &u.place),
                Letter::Pi => unreachable!("normalized words carry one leading pi"),
            })
            .collect::<Result<Vec<_>>>()?;
        let c = c.to_i64().ok_or_else(|| Error::InvalidSymbol("coefficient overflow".into()))?;
        out = out.add(&SymbolExpr::word(theory, &k, GradedWord::new(eta, rest), c));
    }
    Ok(out)
}

pub fn residue_milnor(e: &SymbolExpr, u: &UniformizerChoice) -> Result<SymbolExpr> {
    residue_symbol(e, u, Theory::KM)
}

pub fn residue_mw(e: &SymbolExpr, u: &UniformizerChoice) -> Result<SymbolExpr> {
    residue_symbol(e, u, Theory::MWK)
}

fn coef(c: &BigInt) -> Result<i64> {
    c.to_i64().ok_or_else(|| Error::InvalidSymbol("coefficient overflow".into()))
}

/// `eta^r {u_1..u_k} |-> (-1)^k <<u_1..u_k>>` (MWK) or `eta^r [u] |-> <<u>>` (WK).
pub fn witt_image(e: &SymbolExpr) -> Result<WittClass> {
    let sign_per_letter = match e.theory() {
        Theory::MWK => -1,
        Theory::WK => 1,
        Theory::KM => return Err(Error::InvalidSymbol("Milnor symbols have no Witt image".into())),
    };
    let f = e.field();
    let mut acc = WittClass::zero(f)?;
    for (w, c) in e.terms() {
        let p = WittClass::pfister(&PfisterForm::new(f, w.letters.clone())?)?;
        let s = if w.letters.len() % 2 == 1 { sign_per_letter } else { 1 };
        acc = acc.add(&p.scale(s * coef(c)?))?;
    }
    Ok(acc)
}

/// Drops every word carrying `eta`.
pub fn milnor_image(e: &SymbolExpr) -> Result<SymbolExpr> {
    if e.theory() != Theory::MWK {
        return Err(Error::InvalidSymbol("expected a MWK expression".into()));
    }
    let mut out = SymbolExpr::zero(Theory::KM, e.field());
    for (w, c) in e.terms().filter(|(w, _)| w.eta == 0) {
        out = out.add(&SymbolExpr::word(Theory::KM, e.field(), w.clone(), coef(c)?));
    }
    Ok(out)
}

/// Milnor K-theory of a finite field: `Z`, `F^x`, then zero.
fn milnor_zero_finite(e: &SymbolExpr) -> Result<bool> {
    let f = e.field();
    let order = f.tables()?.order() as i64;
    let Some(n) = e.degree()? else { return Ok(true) };
    match n {
        0 => Ok(e.terms().map(|(_, c)| c.clone()).sum::<BigInt>().is_zero()),
        1 => {
            let mut s = BigInt::zero();
            for (w, c) in e.terms() {
                s += c * BigInt::from(w.letters[0].log()?);
            }
            Ok((s % order).is_zero())
        }
        _ => Ok(true),
    }
}

/// Exact zero test over a finite field: MWK through its Witt and Milnor
/// images, WK through its Witt image.
pub fn finite_is_zero(e: &SymbolExpr) -> Result<bool> {
    if !e.field().is_finite() {
        return Err(Error::UnsupportedField(format!("{} is not finite", e.field())));
    }
    e.degree()?;
    match e.theory() {
        Theory::KM => milnor_zero_finite(e),
        Theory::WK => Ok(witt_image(e)?.is_zero()),
        Theory::MWK => Ok(witt_image(e)?.is_zero() && milnor_zero_finite(&milnor_image(e)?)?),
    }
}

/// Places where some entry has odd valuation; `Two` is left to the parity.
pub fn support_form(q: &QuadForm) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    for v in support_places(q.entries())? {
        if v == Place::Two {
            continue;
        }
        let mut odd = false;
        for a in q.entries() {
            odd |= valuation(a, &v)? % 2 != 0;
        }
        if odd {
            out.push(v);
        }
    }
    Ok(out)
}

/// Places dividing some letter, including `Two`.
pub fn support_expr(e: &SymbolExpr) -> Result<Vec<Place>> {
    let letters: Vec<FieldElem> = e.terms().flat_map(|(w, _)| w.letters.iter().cloned()).collect();
    support_places(&letters)
}

#[derive(Clone, Debug)]
pub enum Element {
    Form(QuadForm),
    Symbol(SymbolExpr),
}

impl Element {
    pub fn field(&self) -> &FieldDesc {
        match self {
            Element::Form(q) => q.field(),
            Element::Symbol(e) => e.field(),
        }
    }

    pub fn support(&self) -> Result<Vec<Place>> {
        match self {
            Element::Form(q) => support_form(q),
            Element::Symbol(e) => support_expr(e),
        }
    }

    /// Residue at `u` and whether it vanishes.
    pub fn residue(&self, u: &UniformizerChoice) -> Result<(serde_json::Value, bool)> {
        Ok(match self {
            Element::Form(q) => {
                let r = residue_witt(q, u)?;
                (serde_json::to_value(&r).unwrap(), r.is_zero())
            }
            Element::Symbol(e) => {
                let r = match e.theory() {
                    Theory::KM => residue_milnor(e, u)?,
                    Theory::MWK => residue_mw(e, u)?,
                    Theory::WK => return Err(Error::InvalidSymbol("no residue for WK symbols".into())),
                };
                let z = finite_is_zero(&r)?;
                (serde_json::Value::String(r.to_string()), z)
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueEntry {
    pub place: String,
    pub uniformizer: String,
    pub residue: serde_json::Value,
    pub zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnramifiedReport {
    pub unramified: bool,
    /// Every computed residue, places in canonical order.
    pub residues: Vec<ResidueEntry>,
    /// Places in the support where no residue is defined.
    pub skipped: Vec<String>,
    /// Rank parity at 2 for forms over `Q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_two: Option<u8>,
}

/// Residues at `places`, or at the whole support when `None`.
pub fn unramified_check(x: &Element, places: Option<&[Place]>) -> Result<UnramifiedReport> {
    let f = x.field().clone();
    let mut list: Vec<Place> = match places {
        Some(p) => p.to_vec(),
        None => x.support()?,
    };
    list.sort();
    list.dedup();
    let mut residues = Vec::new();
    let mut skipped = Vec::new();
    for v in &list {
        v.check(&f)?;
        if matches!(v, Place::Two | Place::Real) {
            skipped.push(v.to_string());
            continue;
        }
        let u = UniformizerChoice::default_at(&f, v)?;
        let (residue, zero) = x.residue(&u)?;
        residues.push(ResidueEntry { place: v.to_string(), uniformizer: u.pi.to_string(), residue, zero });
    }
    let parity = match x {
        Element::Form(q) if f.is_rationals() => Some(parity_two(q)?),
        _ => None,
    };
    Ok(UnramifiedReport { unramified: residues.iter().all(|r| r.zero), residues, skipped, parity_two: parity })
}

/// Splits a class over `F_p(t)` as `c + sum <pi u>` with `c` constant: the
/// returned pairs are the residues at finite places, consumed from the
/// largest place down; the first component has no finite residue.
pub fn milnor_split(w: &WittClass) -> Result<(WittClass, Vec<(Place, FiniteWitt)>)> {
    let f = w.field().clone();
    if !f.is_ratfun() {
        return Err(Error::UnsupportedField(format!("{f} is not a rational function field")));
    }
    let mut cur = w.clone();
    let mut taken = Vec::new();
    loop {
        let q = cur.representative()?;
        let finite: Vec<Place> = support_form(&q)?.into_iter().filter(|v| *v != Place::Infinity).collect();
        let Some(v) = finite.last().cloned() else { break };
        let r = second_residue(q.entries(), &v, None)?;
        cur = cur.sub(&residue_lift(&r, &v, &f)?)?;
        taken.push((v, r));
    }
    Ok((cur, taken))
}

/// `sum <pi lift(a)>` over a representative of `r`; its residue at `v` is `r`.
pub fn residue_lift(r: &FiniteWitt, v: &Place, f: &FieldDesc) -> Result<WittClass> {
    let pi = default_uniformizer(f, v)?;
    let entries = r
        .rep_entries()
        .iter()
        .map(|a| Ok(pi.mul(&lift_residue(a, f, v)?)))
        .collect::<Result<Vec<_>>>()?;
    WittClass::of_form(&QuadForm::new(f, entries)?)
}
