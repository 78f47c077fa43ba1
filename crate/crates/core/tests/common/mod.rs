#![allow(dead_code)]

use mwk_core::fields::{FieldDesc, FieldElem};
use mwk_core::quadform::QuadForm;
use proptest::prelude::*;

pub const PRIMES_TO_50: [i64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

pub fn q() -> FieldDesc {
    FieldDesc::rationals()
}

pub fn gf(p: u64) -> FieldDesc {
    FieldDesc::prime(p).unwrap()
}

/// Nonzero rational supported on primes up to 50.
pub fn rational() -> impl Strategy<Value = FieldElem> {
    (any::<bool>(), prop::collection::vec((0..PRIMES_TO_50.len(), -2i64..=2), 0..4)).prop_map(|(neg, fs)| {
        let f = q();
        let mut x = f.from_i64(if neg { -1 } else { 1 });
        for (i, e) in fs {
            x = x.mul(&f.from_i64(PRIMES_TO_50[i]).pow(e).unwrap());
        }
        x
    })
}

pub fn unit_mod(p: u64) -> impl Strategy<Value = FieldElem> {
    (1..p as i64).prop_map(move |a| gf(p).from_i64(a))
}

/// Diagonal entries drawn from `{+-1, +-2, +-3, +-5, +-6, +-7, +-10}`.
pub fn small_rational() -> impl Strategy<Value = FieldElem> {
    prop::sample::select(vec![1i64, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10]).prop_map(|a| q().from_i64(a))
}

pub fn form_over(f: FieldDesc, entries: BoxedStrategy<FieldElem>, ranks: std::ops::RangeInclusive<usize>) -> BoxedStrategy<QuadForm> {
    prop::collection::vec(entries, ranks).prop_map(move |e| QuadForm::new(&f, e).unwrap()).boxed()
}

pub fn f7_form(ranks: std::ops::RangeInclusive<usize>) -> BoxedStrategy<QuadForm> {
    form_over(gf(7), unit_mod(7).boxed(), ranks)
}

pub fn q_form(ranks: std::ops::RangeInclusive<usize>) -> BoxedStrategy<QuadForm> {
    form_over(q(), small_rational().boxed(), ranks)
}
