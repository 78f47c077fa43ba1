//! Milnor, Witt and Milnor-Witt K-groups of finite fields as truncated
//! presentations.
//!
//! Degree `n` is presented on the words `eta^r * x_1 ... x_{n+r}` with
//! `r_min <= r <= r_min + eta_max`, where `r_min = max(0, -n)`; eta is
//! central and folded into the word. Relations are all two-sided instances
//! of the relators whose terms stay inside the truncation.

mod expr;
mod maps;
mod relators;
mod verify;
mod words;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

pub use expr::{GradedWord, SymbolExpr};
pub use maps::{
    e_map, e_map_with, epsilon_map, epsilon_map_with, epsilon_source_eta, ideal, ideal_projection, iota, theta_map,
    theta_map_with, upsilon_map, upsilon_map_with, varpi_map, varpi_map_with, MapSummary, SymbolMap,
};
pub use relators::{families, Family, Instances, Term};
pub use verify::{
    presentation_check_i_n, presented_power, stabilization, verify_exact_sequence, verify_exact_sequence_with,
    verify_pullback, verify_pullback_with, Corners, ExactnessReport, PresentationCheck, PullbackReport,
    StabilityReport, HYPERBOLIC_RELATOR_SIGN,
};
pub use words::{eta_floor, WordIndex};

use crate::error::{Error, Result};
use crate::fields::FieldDesc;
use crate::fpgroup::{FPAbGroup, InvariantFactors, PresentationStats};

pub const DEFAULT_ETA_MAX: u32 = 2;
pub const DEFAULT_LETTER_FLOOR: u32 = 4;
pub const DEFAULT_GENERATOR_CAP: usize = 200_000;
pub const CAP_ENV: &str = "MWK_GENERATOR_CAP";

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub enum Theory {
    KM,
    WK,
    MWK,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theory::KM => "KM",
            Theory::WK => "WK",
            Theory::MWK => "MWK",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "KM" => Ok(Theory::KM),
            "WK" | "MW" => Ok(Theory::WK),
            "MWK" | "KMW" => Ok(Theory::MWK),
            _ => Err(Error::Parse { pos: 0, expected: "KM, WK or MWK".into() }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Options {
    /// Coefficient of `eta{a}{b}` in MW2.
    pub mw2_sign: i64,
    /// Minimum letter count of the top eta level.
    pub letter_floor: u32,
    pub cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        let cap = std::env::var(CAP_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_GENERATOR_CAP);
        Options { mw2_sign: -1, letter_floor: DEFAULT_LETTER_FLOOR, cap }
    }
}

/// A presented degree of one theory over a finite field.
#[derive(Debug)]
pub struct Presentation {
    pub field: FieldDesc,
    pub index: WordIndex,
    pub eta_max: u32,
    pub opts: Options,
    families: Vec<Family>,
    group: Arc<FPAbGroup>,
}

impl Presentation {
    pub fn build(theory: Theory, f: &FieldDesc, n: i64, eta_max: u32, opts: Options) -> Result<Self> {
        if !f.is_finite() {
            return Err(Error::UnsupportedField(format!("presentations need a finite field, got {f}")));
        }
        let tab = f.tables()?;
        let index = WordIndex::new(theory, tab.order() as u64, n, eta_max, opts.letter_floor, opts.cap)?;
        let families = families(theory, tab, opts.mw2_sign);
        let group = Arc::new(FPAbGroup::from_source(&Instances { index: &index, families: &families }));
        Ok(Presentation { field: f.clone(), index, eta_max, opts, families, group })
    }

    pub fn theory(&self) -> Theory {
        self.index.theory
    }

    pub fn degree(&self) -> i64 {
        self.index.degree
    }

    pub fn group(&self) -> &Arc<FPAbGroup> {
        &self.group
    }

    pub fn invariant_factors(&self) -> InvariantFactors {
        self.group.invariant_factors()
    }

    pub fn stats(&self) -> PresentationStats {
        self.group.stats()
    }

    pub fn relators(&self) -> Instances<'_> {
        Instances { index: &self.index, families: &self.families }
    }

    pub fn word(&self, i: usize) -> Result<GradedWord> {
        let (r, ls) = self.index.word(i);
        let letters = ls.iter().map(|&l| self.field.unit_from_log(l)).collect::<Result<_>>()?;
        Ok(GradedWord::new(r, letters))
    }

    /// Letter logs and eta power of generator `i`.
    pub fn raw_word(&self, i: usize) -> (u32, Vec<u32>) {
        self.index.word(i)
    }

    pub fn generator_of(&self, w: &GradedWord) -> Result<usize> {
        let logs = w.letters.iter().map(|a| a.log()).collect::<Result<Vec<_>>>()?;
        self.index.index(w.eta, &logs).ok_or_else(|| {
            Error::InvalidSymbol(format!(
                "word eta^{} with {} letters lies outside degree {} truncation {}..={}",
                w.eta,
                w.letters.len(),
                self.index.degree,
                self.index.r_min,
                self.index.r_max
            ))
        })
    }

    pub fn vector(&self, e: &SymbolExpr) -> Result<Vec<(usize, BigInt)>> {
        if e.theory() != self.theory() {
            return Err(Error::InvalidSymbol(format!("{} expression in a {} group", e.theory(), self.theory())));
        }
        self.field.require_same(e.field())?;
        let mut v: Vec<(usize, BigInt)> =
            e.terms().map(|(w, c)| Ok((self.generator_of(w)?, c.clone()))).collect::<Result<_>>()?;
        v.sort_by_key(|x| x.0);
        Ok(v)
    }

    pub fn coords(&self, e: &SymbolExpr) -> Result<Vec<BigInt>> {
        self.group.coords_sparse(&self.vector(e)?)
    }

    pub fn is_zero(&self, e: &SymbolExpr) -> Result<bool> {
        Ok(self.coords(e)?.iter().all(|x| x == &BigInt::from(0)))
    }
}

type CacheKey = (Theory, String, i64, u32, Options);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Presentation>>> {
    static C: OnceLock<Mutex<HashMap<CacheKey, Arc<Presentation>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Memoized `Presentation::build`.
pub fn presentation(theory: Theory, f: &FieldDesc, n: i64, eta_max: u32, opts: Options) -> Result<Arc<Presentation>> {
    let eta_max = if theory == Theory::KM { 0 } else { eta_max };
    let key = (theory, f.to_string(), n, eta_max, opts);
    if let Some(p) = cache().lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let p = Arc::new(Presentation::build(theory, f, n, eta_max, opts)?);
    cache().lock().unwrap().insert(key, p.clone());
    Ok(p)
}

pub fn present_group(theory: Theory, f: &FieldDesc, n: i64, eta_max: u32) -> Result<Arc<Presentation>> {
    presentation(theory, f, n, eta_max, Options::default())
}

/// Whether `e` vanishes at the given truncation, raised if needed so that
/// every word of `e` is a generator. `true` is conclusive.
pub fn normal_form_zero(e: &SymbolExpr, eta_max: u32) -> Result<bool> {
    let Some(n) = e.degree()? else { return Ok(true) };
    let floor = eta_floor(e.theory(), n);
    let needed = e.terms().map(|(w, _)| w.eta.saturating_sub(floor)).max().unwrap_or(0);
    let p = present_group(e.theory(), e.field(), n, eta_max.max(needed))?;
    p.is_zero(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    #[test]
    fn milnor_groups() {
        let f = gf(7);
        assert_eq!(present_group(Theory::KM, &f, 1, 0).unwrap().invariant_factors(), InvariantFactors::new(0, &[6]));
        assert!(present_group(Theory::KM, &f, 2, 0).unwrap().group().is_trivial());
        assert_eq!(present_group(Theory::KM, &f, 0, 0).unwrap().invariant_factors(), InvariantFactors::new(1, &[]));
    }

    #[test]
    fn mw2_sign_is_invisible_over_prime_fields() {
        for p in [3, 5, 7] {
            let f = gf(p);
            for n in -1..=2 {
                let flipped = Options { mw2_sign: 1, ..Options::default() };
                let a = present_group(Theory::MWK, &f, n, 2).unwrap().invariant_factors();
                let b = Presentation::build(Theory::MWK, &f, n, 2, flipped).unwrap().invariant_factors();
                assert_eq!(a, b, "GF({p}) degree {n}");
            }
        }
    }

    #[test]
    fn negative_degree_is_witt_group() {
        let f = gf(7);
        let p = present_group(Theory::MWK, &f, -1, 2).unwrap();
        assert_eq!(p.invariant_factors(), InvariantFactors::new(0, &[4]));
    }

    #[test]
    fn lemma_identities() {
        let f = gf(7);
        for s in ["[4]*[3]@GF(7)", "[2]*[2] - [2]*[6]@GF(7)", "[1]@GF(7)"] {
            assert!(normal_form_zero(&SymbolExpr::parse(s, None).unwrap(), 2).unwrap(), "{s}");
        }
        let e = SymbolExpr::letter(Theory::WK, &f.from_i64(36)).sub(&SymbolExpr::letter(Theory::WK, &f.from_i64(4)));
        assert!(normal_form_zero(&e, 2).unwrap());
        assert!(!normal_form_zero(&SymbolExpr::parse("[3]@GF(7)", None).unwrap(), 2).unwrap());
    }
}
