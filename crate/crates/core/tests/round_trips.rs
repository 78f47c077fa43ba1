mod common;

use common::*;
use mwk_core::chainp::{find_chain, ChainCertificate, ChainSearch, PfisterTuple, Support};
use mwk_core::fields::{FieldDesc, Place};
use mwk_core::quadform::{GramMatrix, PfisterForm, QuadForm};
use mwk_core::suite::samples;
use mwk_core::wittring::WittClass;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> impl Strategy<Value = FieldDesc> {
    prop_oneof![
        Just(q()),
        prop::sample::select(vec![3u64, 5, 7, 11]).prop_map(gf),
        prop::sample::select(vec![9u64, 25, 27, 49]).prop_map(|n| FieldDesc::galois(n).unwrap()),
        prop::sample::select(vec![3u64, 5]).prop_map(|p| FieldDesc::ratfun(p).unwrap()),
    ]
}

/// Nonzero elements: samples for `Q` and `F_p(t)`, all units otherwise.
fn elements(f: &FieldDesc, seed: u64, n: usize) -> Vec<mwk_core::fields::FieldElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if f.is_finite() {
        let units = f.units().unwrap();
        (0..n).map(|i| units[(seed as usize).wrapping_add(i * 7919) % units.len()].clone()).collect()
    } else {
        (0..n).map(|_| samples::element(&mut rng, f)).collect()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fields_and_elements(f in field(), seed in any::<u64>()) {
        prop_assert_eq!(FieldDesc::parse(&f.to_string()).unwrap(), f.clone());
        for x in elements(&f, seed, 3) {
            prop_assert_eq!(f.parse_elem(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn forms(f in field(), seed in any::<u64>(), rank in 1usize..=4) {
        let q = QuadForm::new(&f, elements(&f, seed, rank)).unwrap();
        prop_assert_eq!(QuadForm::parse(&q.to_string()).unwrap(), q.clone());
        let g = q.gram();
        prop_assert_eq!(GramMatrix::parse(&g.to_string()).unwrap(), g);
        let p = PfisterForm::new(&f, elements(&f, seed ^ 1, rank.min(3))).unwrap();
        prop_assert_eq!(PfisterForm::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn witt_classes(f in field(), seed in any::<u64>(), rank in 0usize..=4) {
        let w = QuadForm::new(&f, elements(&f, seed, rank)).unwrap().witt_class().unwrap();
        let json = serde_json::to_value(&w).unwrap();
        prop_assert_eq!(WittClass::from_json(&f, &json).unwrap(), w);
    }

    #[test]
    fn places(p in prop::sample::select(vec![3u64, 5, 7, 97]), which in 0usize..4) {
        let g = FieldDesc::ratfun(3).unwrap();
        let v = samples::places(&g)[which].clone();
        prop_assert_eq!(Place::parse(&v.to_string(), &g).unwrap(), v);
        let qp = Place::prime(p).unwrap();
        prop_assert_eq!(Place::parse(&qp.to_string(), &q()).unwrap(), qp);
    }

    #[test]
    fn chain_certificates(s in prop::collection::vec(1i64..7, 3), t in prop::collection::vec(1i64..7, 3)) {
        let f = gf(7);
        let (a, b) = (PfisterTuple::from_i64(&f, &s).unwrap(), PfisterTuple::from_i64(&f, &t).unwrap());
        prop_assert_eq!(PfisterTuple::parse(&a.to_string()).unwrap(), a.clone());
        if let Ok(ChainSearch::Found(c)) = find_chain(&a, &b, &Support::Auto) {
            let json = c.to_json();
            let back = ChainCertificate::from_json(&f, &json).unwrap();
            prop_assert_eq!(back.to_json(), json.clone());
            let text = ChainCertificate::parse(&f, &json.to_string()).unwrap();
            prop_assert_eq!(text.to_json(), json);
        }
    }
}
