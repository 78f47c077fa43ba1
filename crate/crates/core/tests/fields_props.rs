mod common;

use common::*;
use mwk_core::fields::hilbert::hilbert_symbol;
use mwk_core::fields::place::support_places;
use mwk_core::fields::{factor_integer, legendre, square_class, Place};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn square_class_constant_on_cosets(x in rational(), y in rational()) {
        let c = square_class(&x).unwrap();
        prop_assert_eq!(square_class(&x.mul(&y.square())).unwrap(), c.clone());
        prop_assert_eq!(square_class(c.rep()).unwrap(), c);
    }

    #[test]
    fn square_class_constant_on_cosets_mod_p(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), a in 1i64..200, b in 1i64..200) {
        let f = gf(p);
        let (x, y) = (f.from_i64(a), f.from_i64(b));
        prop_assume!(!x.is_zero() && !y.is_zero());
        prop_assert_eq!(square_class(&x.mul(&y.square())).unwrap(), square_class(&x).unwrap());
    }

    #[test]
    fn hilbert_product_formula(a in rational(), b in rational()) {
        let mut places = support_places(&[a.clone(), b.clone()]).unwrap();
        if !places.contains(&Place::Two) {
            places.push(Place::Two);
        }
        places.push(Place::Real);
        let prod: i8 = places.iter().map(|v| hilbert_symbol(&a, &b, v).unwrap()).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn legendre_is_multiplicative(p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 101, 7919]), a in -10_000i64..10_000, b in -10_000i64..10_000) {
        prop_assume!(a % p as i64 != 0 && b % p as i64 != 0);
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!(legendre(&a, p).unwrap() * legendre(&b, p).unwrap(), legendre(&(&a * &b), p).unwrap());
    }

    #[test]
    // Below 10^12 every composite has a prime factor under the trial bound.
    fn factorization_round_trips(n in -1_000_000_000_000i64..1_000_000_000_000) {
        prop_assume!(n != 0);
        let n = BigInt::from(n);
        let f = factor_integer(&n).unwrap();
        prop_assert_eq!(f.expand(), n);
        prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
    }
}
