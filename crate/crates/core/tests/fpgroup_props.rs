use std::collections::HashSet;
use std::sync::Arc;

use mwk_core::fpgroup::{pullback, smith_normal_form, FPAbGroup, GroupHom, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

fn relators(max_gens: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_gens).prop_flat_map(|g| (Just(g), prop::collection::vec(prop::collection::vec(-5i64..=5, g), 0..=4)))
}

fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    a.iter().map(|r| (0..cols).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect()).collect()
}

fn is_identity(m: &[Vec<BigInt>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == BigInt::from((i == j) as i64)))
}

/// Size of the subgroup of `(Z/m)^g` spanned by the rows, by closure.
fn span_mod(rows: &[Vec<i64>], g: usize, m: i64) -> usize {
    let zero = vec![0i64; g];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for r in rows {
            let y: Vec<i64> = x.iter().zip(r).map(|(a, b)| (a + b).rem_euclid(m)).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_certified((g, rows) in relators(5)) {
        prop_assume!(!rows.is_empty());
        let a = big(&rows);
        let s = smith_normal_form(&IntMatrix::from_i64(&rows).unwrap());
        let uav = mul(&mul(&s.u, &a, g), &s.v, g);
        prop_assert_eq!(uav, s.d_matrix());
        prop_assert!(is_identity(&mul(&s.u, &s.uinv, rows.len())));
        prop_assert!(is_identity(&mul(&s.v, &s.vinv, g)));
        prop_assert!(s.diag.iter().all(|d| !d.is_negative()));
        prop_assert!((1..s.rank).all(|i| s.diag[i].is_multiple_of(&s.diag[i - 1])));
    }

    #[test]
    fn invariant_factors_match_quotient_counts((g, rows) in relators(3)) {
        let inv = FPAbGroup::from_i64(g, &rows).unwrap().invariant_factors();
        let mut moduli: Vec<i64> = (2..=12).collect();
        if let Some(e) = inv.torsion.last().and_then(|d| d.to_i64()) {
            if e.pow(g as u32) <= 1_000_000 {
                moduli.push(e);
            }
        }
        for m in moduli {
            let expected = (m as usize).pow(inv.free as u32)
                * inv.torsion.iter().map(|d| d.gcd(&BigInt::from(m)).to_usize().unwrap()).product::<usize>();
            let counted = (m as usize).pow(g as u32) / span_mod(&rows, g, m);
            prop_assert_eq!(counted, expected, "modulus {}", m);
        }
    }

    #[test]
    fn relators_are_zero((g, rows) in relators(4)) {
        let group = FPAbGroup::from_i64(g, &rows).unwrap();
        for r in big(&rows) {
            prop_assert!(group.element_is_zero(&r).unwrap());
        }
    }

    #[test]
    fn pullback_square_commutes(
        da in 0i64..=12, db in 0i64..=12, dc in 1i64..=12, x in 0i64..12, y in 0i64..12,
    ) {
        let cyclic = |d: i64| Arc::new(FPAbGroup::cyclic_sum(&[BigInt::from(d)]));
        let (a, b, c) = (cyclic(da), cyclic(db), cyclic(dc));
        // x * d_a must vanish mod d_c for the map to be well defined.
        prop_assume!((x * da) % dc == 0 && (y * db) % dc == 0);
        let coords = |v: i64, src: &Arc<FPAbGroup>| src.coords(&[BigInt::from(v)]).unwrap();
        let f = GroupHom::from_gen_coords(a.clone(), c.clone(), &[coords(x, &c)]).unwrap();
        let g = GroupHom::from_gen_coords(b.clone(), c.clone(), &[coords(y, &c)]).unwrap();
        let pb = pullback(&f, &g).unwrap();
        let left = pb.proj_a.compose(&f).unwrap();
        let right = pb.proj_b.compose(&g).unwrap();
        prop_assert!(left.equals(&right));
    }
}

#[test]
fn zero_presentation_is_free() {
    let g = FPAbGroup::from_i64(2, &[]).unwrap();
    assert_eq!(g.invariant_factors().free, 2);
    assert!(g.order().is_none());
}
