//! Comparison maps between the presented groups and the Witt-ring tables.
//!
//! * `theta`:   WK_n  -> I^n,   eta^r [u_1..u_k] |-> <<u_1..u_k>>
//! * `upsilon`: MWK_n -> I^n,   eta^r {u_1..u_k} |-> (-1)^k <<u_1..u_k>>
//! * `varpi`:   MWK_n -> K_n,   {u_1..u_n} |-> l(u_1..u_n), eta-words |-> 0
//! * `epsilon`: WK_{n+1} -> MWK_n, eta^r [u_1..u_k] |-> (-1)^{n+r+1} eta^{r+1} {u_1..u_k}
//! * `e`:       K_n -> I^n / I^{n+1}, l(u_1..u_n) |-> <<u_1..u_n>>
//!
//! Every map is checked on the relation lattice of its source and on every
//! streamed relator instance.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{presentation, Options, Presentation, Theory};
use crate::error::Result;
use crate::fields::FieldDesc;
use crate::fpgroup::{FPAbGroup, GroupHom};
use crate::quadform::QuadForm;
use crate::wittring::{ideal_group, iota_group, tables::witt_elements, ClassGroup, WittClass};

pub struct SymbolMap {
    pub name: &'static str,
    pub hom: GroupHom,
    /// Relator instances whose image was checked to vanish.
    pub certified: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapSummary {
    pub name: &'static str,
    pub injective: bool,
    pub surjective: bool,
    pub certified_relators: usize,
}

impl SymbolMap {
    pub fn summary(&self) -> MapSummary {
        MapSummary {
            name: self.name,
            injective: self.hom.is_injective(),
            surjective: self.hom.is_surjective(),
            certified_relators: self.certified,
        }
    }
}

type GroupKey = (String, i64, bool);

fn class_group(f: &FieldDesc, n: i64, quotient: bool) -> Result<Arc<ClassGroup>> {
    static C: OnceLock<Mutex<HashMap<GroupKey, Arc<ClassGroup>>>> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    let key = (f.to_string(), n, quotient);
    if let Some(g) = cache.lock().unwrap().get(&key) {
        return Ok(g.clone());
    }
    let g = Arc::new(if quotient { iota_group(f, n)? } else { ideal_group(f, n)? });
    cache.lock().unwrap().insert(key, g.clone());
    Ok(g)
}

pub fn ideal(f: &FieldDesc, n: i64) -> Result<Arc<ClassGroup>> {
    class_group(f, n, false)
}

pub fn iota(f: &FieldDesc, n: i64) -> Result<Arc<ClassGroup>> {
    class_group(f, n, true)
}

/// Pfister classes of letter words, by folding `x |-> x <<u>>` over `W(F)`.
struct PfisterTable {
    elems: Vec<WittClass>,
    step: Vec<Vec<usize>>,
    neg: Vec<usize>,
    one: usize,
}

impl PfisterTable {
    fn new(f: &FieldDesc) -> Result<Self> {
        let elems = witt_elements(f)?;
        let pos = |w: &WittClass| elems.iter().position(|e| e == w).unwrap();
        let units = f.tables()?.order();
        let mut step = Vec::new();
        for e in &elems {
            let mut row = Vec::new();
            for u in 0..units {
                let a = f.unit_from_log(u)?;
                let pf = QuadForm::new(f, vec![f.one(), a.neg()])?.witt_class()?;
                row.push(pos(&e.mul(&pf)?));
            }
            step.push(row);
        }
        let neg = elems.iter().map(|e| pos(&e.neg())).collect();
        let one = pos(&QuadForm::new(f, vec![f.one()])?.witt_class()?);
        Ok(PfisterTable { elems, step, neg, one })
    }

    fn pfister(&self, letters: &[u32]) -> usize {
        letters.iter().fold(self.one, |x, &u| self.step[x][u as usize])
    }
}

fn build(
    name: &'static str,
    source: &Presentation,
    target: Arc<FPAbGroup>,
    image: &dyn Fn(u32, &[u32]) -> Result<Vec<BigInt>>,
) -> Result<SymbolMap> {
    let coords: Vec<Vec<BigInt>> = (0..source.index.len())
        .map(|i| {
            let (r, l) = source.raw_word(i);
            image(r, &l)
        })
        .collect::<Result<_>>()?;
    let hom = GroupHom::from_gen_coords(source.group().clone(), target, &coords)?;
    let certified = hom.certify_relators(&source.relators(), &|g| coords[g].clone())?;
    Ok(SymbolMap { name, hom, certified })
}

fn class_coords(g: &ClassGroup, w: &WittClass) -> Result<Vec<BigInt>> {
    g.coords(w)
}

pub fn theta_map(f: &FieldDesc, n: i64, eta_max: u32) -> Result<SymbolMap> {
    theta_map_with(f, n, eta_max, Options::default())
}

pub fn theta_map_with(f: &FieldDesc, n: i64, eta_max: u32, opts: Options) -> Result<SymbolMap> {
    let src = presentation(Theory::WK, f, n, eta_max, opts)?;
    let tgt = ideal(f, n)?;
    let pf = PfisterTable::new(f)?;
    build("theta", &src, tgt.group().clone(), &|_, l| class_coords(&tgt, &pf.elems[pf.pfister(l)]))
}

pub fn upsilon_map(f: &FieldDesc, n: i64, eta_max: u32) -> Result<SymbolMap> {
    upsilon_map_with(f, n, eta_max, Options::default())
}

pub fn upsilon_map_with(f: &FieldDesc, n: i64, eta_max: u32, opts: Options) -> Result<SymbolMap> {
    let src = presentation(Theory::MWK, f, n, eta_max, opts)?;
    let tgt = ideal(f, n)?;
    let pf = PfisterTable::new(f)?;
    build("upsilon", &src, tgt.group().clone(), &|_, l| {
        let mut x = pf.pfister(l);
        if l.len() % 2 == 1 {
            x = pf.neg[x];
        }
        class_coords(&tgt, &pf.elems[x])
    })
}

pub fn varpi_map(f: &FieldDesc, n: i64, eta_max: u32) -> Result<SymbolMap> {
    varpi_map_with(f, n, eta_max, Options::default())
}

pub fn varpi_map_with(f: &FieldDesc, n: i64, eta_max: u32, opts: Options) -> Result<SymbolMap> {
    let src = presentation(Theory::MWK, f, n, eta_max, opts)?;
    let km = presentation(Theory::KM, f, n, 0, opts)?;
    let nt = km.group().ncoords();
    build("varpi", &src, km.group().clone(), &|r, l| {
        if r > 0 {
            return Ok(vec![BigInt::zero(); nt]);
        }
        let g = km.index.index(0, l).expect("degree-n letter word is a Milnor generator");
        km.group().coords_of_gen(g)
    })
}

/// Source eta window so that every image lies in the target truncation.
pub fn epsilon_source_eta(n: i64, eta_max: u32) -> u32 {
    if n >= 0 {
        eta_max.saturating_sub(1)
    } else {
        eta_max
    }
}

pub fn epsilon_map(f: &FieldDesc, n: i64, eta_max: u32) -> Result<SymbolMap> {
    epsilon_map_with(f, n, eta_max, Options::default())
}

pub fn epsilon_map_with(f: &FieldDesc, n: i64, eta_max: u32, opts: Options) -> Result<SymbolMap> {
    let src = presentation(Theory::WK, f, n + 1, epsilon_source_eta(n, eta_max), opts)?;
    let tgt = presentation(Theory::MWK, f, n, eta_max, opts)?;
    build("epsilon", &src, tgt.group().clone(), &|r, l| {
        let g = tgt.index.index(r + 1, l).expect("epsilon image inside the target truncation");
        let c = tgt.group().coords_of_gen(g)?;
        let sign = if (n + r as i64 + 1) % 2 == 0 { 1 } else { -1 };
        Ok(tgt.group().canonical(c.into_iter().map(|x| x * sign).collect()))
    })
}

pub fn e_map(f: &FieldDesc, n: i64) -> Result<SymbolMap> {
    e_map_with(f, n, Options::default())
}

pub fn e_map_with(f: &FieldDesc, n: i64, opts: Options) -> Result<SymbolMap> {
    let km = presentation(Theory::KM, f, n, 0, opts)?;
    let tgt = iota(f, n)?;
    let pf = PfisterTable::new(f)?;
    build("e", &km, tgt.group().clone(), &|_, l| class_coords(&tgt, &pf.elems[pf.pfister(l)]))
}

/// `I^n -> I^n / I^{n+1}`.
pub fn ideal_projection(f: &FieldDesc, n: i64) -> Result<GroupHom> {
    let src = ideal(f, n)?;
    let tgt = iota(f, n)?;
    let coords: Vec<Vec<BigInt>> = src.elements().iter().map(|w| tgt.coords(w)).collect::<Result<_>>()?;
    GroupHom::from_gen_coords(src.group().clone(), tgt.group().clone(), &coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::InvariantFactors;

    fn f7() -> FieldDesc {
        FieldDesc::prime(7).unwrap()
    }

    #[test]
    fn theta_is_an_isomorphism() {
        for n in -1..=3 {
            let m = theta_map(&f7(), n, 2).unwrap();
            assert!(m.hom.is_isomorphism(), "n = {n}");
            assert!(m.certified > 0 || n >= 2);
        }
    }

    #[test]
    fn theta_on_words() {
        let f = f7();
        let m = theta_map(&f, 1, 2).unwrap();
        let src = presentation(Theory::WK, &f, 1, 2, Options::default()).unwrap();
        let g = src.index.index(0, &[f.from_i64(3).log().unwrap()]).unwrap();
        let img = m.hom.apply(&[(g, BigInt::from(1))]).unwrap();
        assert!(!m.hom.target().coords_is_zero(&img));
        assert_eq!(m.hom.target().invariant_factors(), InvariantFactors::new(0, &[2]));
    }

    #[test]
    fn varpi_and_e() {
        let f = f7();
        let v = varpi_map(&f, 1, 2).unwrap();
        assert!(v.hom.is_surjective());
        assert_eq!(v.hom.target().invariant_factors(), InvariantFactors::new(0, &[6]));
        let e = e_map(&f, 1).unwrap();
        let km = presentation(Theory::KM, &f, 1, 0, Options::default()).unwrap();
        let g = km.index.index(0, &[f.from_i64(3).log().unwrap()]).unwrap();
        assert!(!e.hom.target().coords_is_zero(&e.hom.apply(&[(g, BigInt::from(1))]).unwrap()));
    }
}
