mod common;

use common::*;
use mwk_core::chainp::{find_chain, verify_chain, ChainCertificate, ChainSearch, PfisterTuple, Step, Support};
use mwk_core::fields::square_class;
use proptest::prelude::*;

fn tuple(p: u64, slots: &[i64]) -> PfisterTuple {
    PfisterTuple::from_i64(&gf(p), slots).unwrap()
}

fn isometric(a: &PfisterTuple, b: &PfisterTuple) -> bool {
    a.form().expand().is_isometric(&b.form().expand()).unwrap()
}

fn found(a: &PfisterTuple, b: &PfisterTuple) -> Option<ChainCertificate> {
    match find_chain(a, b, &Support::Auto) {
        Ok(ChainSearch::Found(c)) => Some(c),
        _ => None,
    }
}

fn random_steps() -> impl Strategy<Value = Vec<(usize, usize, i64, i64)>> {
    prop::collection::vec((1usize..=3, 1usize..=3, -6i64..=6, -6i64..=6), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn accepted_certificates_are_sound(
        p in prop::sample::select(vec![5u64, 7, 11]),
        s in prop::collection::vec(1i64..=12, 3),
        t in prop::collection::vec(1i64..=12, 3),
        steps in random_steps(),
    ) {
        let f = gf(p);
        prop_assume!(s.iter().chain(&t).all(|x| x % p as i64 != 0));
        let (a, b) = (tuple(p, &s), tuple(p, &t));
        let steps: Vec<Step> = steps
            .into_iter()
            .filter(|&(_, _, x, y)| x % p as i64 != 0 && y % p as i64 != 0)
            .map(|(i, j, x, y)| Step {
                i,
                j,
                bi: square_class(&f.from_i64(x)).unwrap(),
                bj: square_class(&f.from_i64(y)).unwrap(),
            })
            .collect();
        if verify_chain(&a, &b, &ChainCertificate { steps }).valid {
            prop_assert!(isometric(&a, &b));
        }
        if let Some(c) = found(&a, &b) {
            prop_assert!(verify_chain(&a, &b, &c).valid);
            prop_assert!(isometric(&a, &b));
        }
    }

    #[test]
    fn rational_certificates_are_sound(s in prop::collection::vec(small_rational(), 2), t in prop::collection::vec(small_rational(), 2)) {
        let f = q();
        let (a, b) = (PfisterTuple::new(&f, &s).unwrap(), PfisterTuple::new(&f, &t).unwrap());
        match find_chain(&a, &b, &Support::Auto) {
            Ok(ChainSearch::Found(c)) => {
                prop_assert!(verify_chain(&a, &b, &c).valid);
                prop_assert!(isometric(&a, &b));
            }
            Ok(ChainSearch::NotFoundWithinSupport { .. }) => prop_assert!(isometric(&a, &b)),
            Err(_) => prop_assert!(!isometric(&a, &b)),
        }
    }

    #[test]
    fn search_is_deterministic(s in prop::collection::vec(1i64..7, 3), t in prop::collection::vec(1i64..7, 3)) {
        let (a, b) = (tuple(7, &s), tuple(7, &t));
        let first = found(&a, &b).map(|c| c.to_json());
        prop_assert_eq!(found(&a, &b).map(|c| c.to_json()), first);
    }
}

#[test]
fn represented_values_rescale_an_appended_slot() {
    let f = gf(7);
    for n in 1..=2 {
        let mut bases = vec![Vec::new()];
        for _ in 0..n {
            bases = bases.into_iter().flat_map(|s: Vec<i64>| [1i64, 3].map(|r| [s.clone(), vec![r]].concat())).collect();
        }
        for base in bases {
            let form = tuple(7, &base).form().expand();
            for c in f.units().unwrap() {
                if !form.represents(&c).unwrap() {
                    continue;
                }
                for d in f.units().unwrap() {
                    let mut s1: Vec<_> = base.iter().map(|&x| f.from_i64(x)).collect();
                    let mut s2 = s1.clone();
                    s1.push(d.clone());
                    s2.push(c.mul(&d));
                    let (a, b) = (PfisterTuple::new(&f, &s1).unwrap(), PfisterTuple::new(&f, &s2).unwrap());
                    let cert = found(&a, &b).expect("chain");
                    assert!(verify_chain(&a, &b, &cert).valid);
                }
            }
        }
    }
}
