mod common;

use common::*;
use mwk_core::fields::{FieldDesc, FieldElem};
use mwk_core::quadform::{GramMatrix, PfisterForm, QuadForm};
use proptest::prelude::*;

fn any_form() -> BoxedStrategy<QuadForm> {
    prop_oneof![f7_form(1..=3), q_form(1..=3)].boxed()
}

/// Triples of forms over one field.
fn triple() -> BoxedStrategy<(QuadForm, QuadForm, QuadForm)> {
    prop_oneof![
        (f7_form(1..=3), f7_form(1..=3), f7_form(1..=3)),
        (q_form(1..=3), q_form(1..=3), q_form(1..=3)),
    ]
    .boxed()
}

fn vector(f: &FieldDesc, v: &[i64]) -> Vec<FieldElem> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

fn congruent(q: &QuadForm, p: &[Vec<i64>]) -> GramMatrix {
    let f = q.field();
    let n = q.rank();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(f.zero(), |acc, k| {
                        acc.add(&f.from_i64(p[i][k]).mul(&q.entries()[k]).mul(&f.from_i64(p[j][k])))
                    })
                })
                .collect()
        })
        .collect();
    GramMatrix::new(f, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn witt_cancellation((q, q1, q2) in triple()) {
        let lhs = q.orth_sum(&q1).unwrap().is_isometric(&q.orth_sum(&q2).unwrap()).unwrap();
        prop_assert_eq!(lhs, q1.is_isometric(&q2).unwrap());
    }

    #[test]
    fn reflection_is_an_isometric_involution(
        q in any_form(),
        v in prop::collection::vec(-4i64..=4, 3),
        x in prop::collection::vec(-4i64..=4, 3),
    ) {
        let f = q.field().clone();
        let (v, x) = (vector(&f, &v[..q.rank()]), vector(&f, &x[..q.rank()]));
        prop_assume!(!q.eval(&v).unwrap().is_zero());
        let y = q.reflect(&v, &x).unwrap();
        prop_assert_eq!(q.eval(&y).unwrap(), q.eval(&x).unwrap());
        prop_assert_eq!(q.reflect(&v, &y).unwrap(), x);
    }

    #[test]
    fn diagonalization_preserves_isometry_class(
        q in any_form(),
        p in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3),
    ) {
        let g = congruent(&q, &p);
        prop_assume!(!g.det().is_zero());
        let (d, basis) = g.diagonalize_with_basis().unwrap();
        prop_assert!(d.is_isometric(&q).unwrap());
        let n = q.rank();
        for i in 0..n {
            for j in 0..n {
                let b = g.polar(&basis[i], &basis[j]).unwrap();
                let want = if i == j { d.entries()[i].add(&d.entries()[i]) } else { q.field().zero() };
                prop_assert_eq!(b, want);
            }
        }
    }

    #[test]
    fn binary_values_rescale_pfister_slots(a in small_rational(), b in small_rational(), x in -5i64..=5, y in -5i64..=5) {
        let f = q();
        let binary = QuadForm::new(&f, vec![f.one(), a.neg()]).unwrap();
        let c = binary.eval(&vector(&f, &[x, y])).unwrap();
        prop_assume!(!c.is_zero());
        let p1 = PfisterForm::new(&f, vec![a.clone(), b.clone()]).unwrap().expand();
        let p2 = PfisterForm::new(&f, vec![a, b.mul(&c)]).unwrap().expand();
        prop_assert!(p1.is_isometric(&p2).unwrap());
    }
}

fn f7_pfister_forms(n: usize) -> Vec<PfisterForm> {
    let f = gf(7);
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|s: Vec<i64>| [1i64, 3].map(|r| [s.clone(), vec![r]].concat())).collect();
    }
    out.into_iter().map(|s| PfisterForm::from_i64(&f, &s).unwrap()).collect()
}

#[test]
fn pure_values_give_new_first_slot_over_f7() {
    let f = gf(7);
    let units = f.units().unwrap();
    for a in &units {
        for b in &units {
            let p = PfisterForm::new(&f, vec![a.clone(), b.clone()]).unwrap();
            let q = p.expand();
            for c in &units {
                if !p.pure_subform().represents(&c.neg()).unwrap() {
                    continue;
                }
                let found = units.iter().any(|d| {
                    PfisterForm::new(&f, vec![c.clone(), d.clone()]).unwrap().expand().is_isometric(&q).unwrap()
                });
                assert!(found, "<<{a},{b}>> with c = {c}");
            }
        }
    }
}

#[test]
fn binary_values_rescale_pfister_slots_over_f7() {
    let f = gf(7);
    let units = f.units().unwrap();
    for a in &units {
        let binary = QuadForm::new(&f, vec![f.one(), a.neg()]).unwrap();
        for b in &units {
            for c in &units {
                if !binary.represents(c).unwrap() {
                    continue;
                }
                let p1 = PfisterForm::new(&f, vec![a.clone(), b.clone()]).unwrap().expand();
                let p2 = PfisterForm::new(&f, vec![a.clone(), b.mul(c)]).unwrap().expand();
                assert!(p1.is_isometric(&p2).unwrap());
            }
        }
    }
}

#[test]
fn pure_values_start_an_isometric_pfister_form_over_f7() {
    let f = gf(7);
    for n in 1..=3 {
        let all = f7_pfister_forms(n);
        for p in &all {
            let q = p.expand();
            for b in f.units().unwrap() {
                if !p.pure_subform().represents(&b.neg()).unwrap() {
                    continue;
                }
                let found = all.iter().any(|r| {
                    let mut slots = r.slots().to_vec();
                    slots[0] = b.clone();
                    PfisterForm::new(&f, slots).unwrap().expand().is_isometric(&q).unwrap()
                });
                assert!(found, "n = {n}, q = {q:?}, b = {b}");
            }
        }
    }
}
