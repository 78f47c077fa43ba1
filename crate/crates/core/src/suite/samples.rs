//! Seeded random elements, forms and symbols over `Q` and `F_3(t)`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fields::place::valuation;
use crate::fields::{FieldDesc, FieldElem, Place};
use crate::quadform::QuadForm;
use crate::symbolic::{GradedWord, SymbolExpr, Theory};

const PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];
const POLYS: [&str; 5] = ["t", "t+1", "t+2", "t^2+1", "t^2+t+2"];

/// Product of small primes or small irreducibles with exponents in `-2..=2`
/// times a sign or constant.
pub fn element<R: Rng>(rng: &mut R, f: &FieldDesc) -> FieldElem {
    let mut x = if f.is_ratfun() {
        f.from_i64(rng.gen_range(1..f.characteristic() as i64))
    } else {
        f.from_i64(if rng.gen_bool(0.5) { 1 } else { -1 })
    };
    let factors: Vec<FieldElem> = if f.is_ratfun() {
        POLYS.iter().map(|s| f.parse_elem(s).unwrap()).collect()
    } else {
        PRIMES.iter().map(|&p| f.from_i64(p)).collect()
    };
    for _ in 0..rng.gen_range(0..=3) {
        let g = factors.choose(rng).unwrap();
        let e = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        x = x.mul(&g.pow(e).unwrap());
    }
    x
}

/// A unit at `v` other than a square, when one is easy to find.
pub fn unit_at<R: Rng>(rng: &mut R, f: &FieldDesc, v: &Place) -> FieldElem {
    loop {
        let x = element(rng, f);
        if valuation(&x, v).unwrap() == 0 {
            return x;
        }
    }
}

pub fn form<R: Rng>(rng: &mut R, f: &FieldDesc, max_rank: usize) -> QuadForm {
    let r = rng.gen_range(1..=max_rank);
    QuadForm::new(f, (0..r).map(|_| element(rng, f)).collect()).unwrap()
}

/// Homogeneous symbol of degree `n` with one to three words carrying at
/// most `max_eta` powers of eta (ignored for KM).
pub fn symbol<R: Rng>(rng: &mut R, theory: Theory, f: &FieldDesc, n: usize, max_eta: u32) -> SymbolExpr {
    let mut e = SymbolExpr::zero(theory, f);
    for _ in 0..rng.gen_range(1..=3) {
        let r = if theory == Theory::KM { 0 } else { rng.gen_range(0..=max_eta) };
        let letters = (0..n + r as usize).map(|_| element(rng, f)).collect();
        let c = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        e = e.add(&SymbolExpr::word(theory, f, GradedWord::new(r, letters), c));
    }
    e
}

/// Places likely to meet the supports of the samples above.
pub fn places(f: &FieldDesc) -> Vec<Place> {
    if f.is_ratfun() {
        let mut v: Vec<Place> = ["poly(t)", "poly(t+1)", "poly(t^2+1)", "inf"]
            .iter()
            .map(|s| Place::parse(s, f).unwrap())
            .collect();
        v.sort();
        v
    } else {
        [3u64, 5, 7, 11].iter().map(|&p| Place::OddPrime(p)).collect()
    }
}
