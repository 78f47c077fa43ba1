//! Folding eta into the word index versus keeping it as a positional letter
//! with explicit commutation relators, plus expression-level identities.

mod common;

use std::collections::HashMap;

use common::*;
use mwk_core::fields::FieldDesc;
use mwk_core::fpgroup::{FPAbGroup, IntMatrix};
use mwk_core::symbolic::{
    eta_floor, families, normal_form_zero, present_group, GradedWord, SymbolExpr, Term, Theory, DEFAULT_LETTER_FLOOR,
};
use num_bigint::BigInt;
use proptest::prelude::*;

const ETA: u32 = u32::MAX;

/// Words over `{eta} + units` with eta count in `r_min..=r_max` and degree `n`.
struct Unfolded {
    index: HashMap<Vec<u32>, usize>,
    max_len: usize,
}

fn words(units: u32, len: usize) -> Vec<Vec<u32>> {
    let alphabet: Vec<u32> = std::iter::once(ETA).chain(0..units).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| alphabet.iter().map(move |&a| [w.clone(), vec![a]].concat())).collect();
    }
    out
}

impl Unfolded {
    fn new(units: u32, n: i64, r_min: u32, r_max: u32) -> Self {
        let mut index = HashMap::new();
        let max_len = (n + 2 * r_max as i64) as usize;
        for r in r_min..=r_max {
            let len = (n + 2 * r as i64) as usize;
            for w in words(units, len) {
                if w.iter().filter(|&&a| a == ETA).count() == r as usize {
                    let k = index.len();
                    index.insert(w, k);
                }
            }
        }
        Unfolded { index, max_len }
    }

    /// Rows `x * rho * y` for every context whose terms all land in the index.
    fn instances(&self, units: u32, rho: &[(i64, Vec<u32>)], out: &mut IntMatrix) {
        let core = rho.iter().map(|(_, w)| w.len()).max().unwrap();
        for xlen in 0..=self.max_len.saturating_sub(core) {
            for ylen in 0..=self.max_len - core - xlen {
                for x in words(units, xlen) {
                    for y in words(units, ylen) {
                        let row: Option<Vec<(usize, BigInt)>> = rho
                            .iter()
                            .map(|(c, w)| {
                                let full = [x.clone(), w.clone(), y.clone()].concat();
                                self.index.get(&full).map(|&k| (k, BigInt::from(*c)))
                            })
                            .collect();
                        if let Some(row) = row {
                            out.push_sparse(row).unwrap();
                        }
                    }
                }
            }
        }
    }
}

fn unfold(t: &Term) -> Vec<u32> {
    std::iter::repeat(ETA).take(t.r as usize).chain(t.letters.iter().copied()).collect()
}

fn unfolded_group(theory: Theory, p: u64, n: i64, eta_max: u32) -> FPAbGroup {
    let f = gf(p);
    let tab = f.tables().unwrap();
    let units = tab.order();
    let r_min = eta_floor(theory, n);
    let r_max = (r_min + eta_max).max((DEFAULT_LETTER_FLOOR as i64 - n).max(0) as u32);
    let u = Unfolded::new(units, n, r_min, r_max);
    let mut rel = IntMatrix::new(u.index.len());
    for fam in families(theory, tab, -1) {
        for inst in &fam.instances {
            let rho: Vec<(i64, Vec<u32>)> = inst.iter().map(|t| (t.coef, unfold(t))).collect();
            u.instances(units, &rho, &mut rel);
        }
    }
    for a in 0..units {
        u.instances(units, &[(1, vec![ETA, a]), (-1, vec![a, ETA])], &mut rel);
    }
    FPAbGroup::from_relations(u.index.len(), &rel).unwrap()
}

#[test]
fn folding_eta_matches_explicit_commutators() {
    for theory in [Theory::WK, Theory::MWK] {
        for n in [0, 1] {
            for eta_max in [1, 2] {
                let folded = present_group(theory, &gf(3), n, eta_max).unwrap().invariant_factors();
                let unfolded = unfolded_group(theory, 3, n, eta_max).invariant_factors();
                assert_eq!(folded, unfolded, "{theory} n={n} eta_max={eta_max}");
            }
        }
    }
}

fn wk(f: &FieldDesc, xs: &[i64]) -> SymbolExpr {
    SymbolExpr::word(Theory::WK, f, GradedWord::new(0, xs.iter().map(|&x| f.from_i64(x)).collect()), 1)
}


proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn steinberg_symbols_vanish(p in prop::sample::select(vec![5u64, 7, 11]), a in 2i64..11) {
        let f = gf(p);
        let a = a % p as i64;
        prop_assume!(a > 1);
        let km = SymbolExpr::word(Theory::KM, &f, GradedWord::new(0, vec![f.from_i64(a), f.from_i64(1 - a)]), 1);
        prop_assert!(normal_form_zero(&km, 0).unwrap());
        prop_assert!(normal_form_zero(&wk(&f, &[a, 1 - a]), 2).unwrap());
    }

    #[test]
    fn symbols_depend_on_square_classes(a in 1i64..7, b in 1i64..7) {
        let f = gf(7);
        prop_assert!(normal_form_zero(&wk(&f, &[a * b * b]).sub(&wk(&f, &[a])), 2).unwrap());
    }

    #[test]
    fn parse_display_round_trip(a in 1i64..7, b in 1i64..7, c in -3i64..=3) {
        let f = gf(7);
        let e = wk(&f, &[a, b]).scale(c).add(&SymbolExpr::eta(Theory::WK, &f).mul(&wk(&f, &[a, b, a])));
        let back = SymbolExpr::parse(&e.to_string(), None).unwrap();
        prop_assert_eq!(back, e);
    }
}
