mod common;

use std::collections::{BTreeMap, HashMap};

use common::*;
use mwk_core::quadform::{PfisterForm, QuadForm};
use mwk_core::wittring::tables::witt_elements;
use mwk_core::wittring::{gw_from_pullback, GWClass, WittClass};
use proptest::prelude::*;

fn any_form() -> BoxedStrategy<QuadForm> {
    prop_oneof![f7_form(0..=4), q_form(0..=4)].boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hyperbolic_planes_vanish(q in any_form()) {
        let h = QuadForm::hyperbolic(q.field(), 1);
        prop_assert_eq!(q.orth_sum(&h).unwrap().witt_class().unwrap(), q.witt_class().unwrap());
    }

    #[test]
    fn ideal_powers_descend(q in any_form()) {
        let w = q.witt_class().unwrap();
        for n in 0..4 {
            if w.in_i_n(n + 1).unwrap() {
                prop_assert!(w.in_i_n(n).unwrap());
            }
        }
    }

    #[test]
    fn product_of_one_fold_forms_is_two_fold((a, b) in prop_oneof![(unit_mod(7), unit_mod(7)), (small_rational(), small_rational())]) {
        let f = a.field().clone();
        let pa = WittClass::pfister(&PfisterForm::new(&f, vec![a.clone()]).unwrap()).unwrap();
        let pb = WittClass::pfister(&PfisterForm::new(&f, vec![b.clone()]).unwrap()).unwrap();
        let prod = pa.mul(&pb).unwrap();
        prop_assert!(prod.in_i_n(2).unwrap());
        prop_assert_eq!(prod, WittClass::pfister(&PfisterForm::new(&f, vec![a, b]).unwrap()).unwrap());
    }
}

/// All diagonal forms of rank at most 4 over `F_p`, up to square classes.
fn small_forms(p: u64) -> Vec<QuadForm> {
    let f = gf(p);
    let reps: Vec<_> = f.square_class_reps().unwrap().iter().map(|c| c.rep().clone()).collect();
    let mut out = vec![Vec::new()];
    let mut all = vec![QuadForm::empty(&f)];
    for _ in 0..4 {
        out = out.into_iter().flat_map(|v: Vec<_>| reps.iter().map(move |r| [v.clone(), vec![r.clone()]].concat())).collect();
        all.extend(out.iter().map(|e| QuadForm::new(&f, e.clone()).unwrap()));
    }
    all
}

#[test]
fn grothendieck_witt_pairs_are_faithful() {
    for p in [5, 7] {
        let forms = small_forms(p);
        let mut by_class: HashMap<GWClass, &QuadForm> = HashMap::new();
        for q in &forms {
            let g = GWClass::of_form(q).unwrap();
            assert_eq!(gw_from_pullback(q.rank() as i64, g.witt()).unwrap(), g);
            if let Some(other) = by_class.get(&g) {
                assert!(q.is_isometric(other).unwrap(), "GF({p}): {q:?} and {other:?}");
            } else {
                by_class.insert(g, q);
            }
        }
        let f = gf(p);
        for w in witt_elements(&f).unwrap() {
            for rank in 0..=4i64 {
                let compatible = rank.rem_euclid(2) as u8 == w.e0().unwrap();
                let pair = gw_from_pullback(rank, &w);
                assert_eq!(pair.is_ok(), compatible);
                let realized = w.representative().unwrap().rank() as i64 <= rank;
                if compatible && realized {
                    assert!(by_class.contains_key(&pair.unwrap()), "GF({p}): rank {rank}, {w}");
                }
            }
        }
    }
}

#[test]
fn small_anisotropic_classes_avoid_high_powers() {
    let f = gf(7);
    let mut seen = BTreeMap::new();
    for w in witt_elements(&f).unwrap() {
        let r = w.representative().unwrap().rank();
        for n in 1..=2u32 {
            if !w.is_zero() && r < 1 << n {
                assert!(!w.in_i_n(n as i64).unwrap(), "{w} of rank {r} in I^{n}");
            }
        }
        seen.insert(r, ());
    }
    assert_eq!(seen.len(), 3);
}
