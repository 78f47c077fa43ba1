//! Structural checks of the presented groups over a finite field.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::maps::{
    e_map_with, epsilon_map_with, epsilon_source_eta, ideal, ideal_projection, iota, upsilon_map_with,
    varpi_map_with, MapSummary,
};
use super::{presentation, Options, Theory};
use crate::error::{Error, Result};
use crate::fields::{FieldDesc, FieldElem};
use crate::fpgroup::{pullback, FPAbGroup, GroupHom, InvariantFactors, Lattice};
use crate::quadform::PfisterForm;
use crate::wittring::{enumerate_witt_group, WittClass};

fn same_lattice(a: &Lattice, b: &Lattice) -> bool {
    a.basis().iter().all(|v| b.contains(v)) && b.basis().iter().all(|v| a.contains(v))
}

#[derive(Clone, Debug, Serialize)]
pub struct Corners {
    pub mwk: InvariantFactors,
    pub ideal: InvariantFactors,
    pub quotient: InvariantFactors,
    pub milnor: InvariantFactors,
    pub pullback: InvariantFactors,
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackReport {
    pub field: String,
    pub degree: i64,
    pub eta_max: u32,
    pub corners: Corners,
    pub square_commutes: bool,
    pub induced_injective: bool,
    pub induced_onto_pullback: bool,
    pub maps: Vec<MapSummary>,
    pub passed: bool,
}

pub fn verify_pullback(f: &FieldDesc, n: i64, eta_max: u32) -> Result<PullbackReport> {
    verify_pullback_with(f, n, eta_max, Options::default())
}

pub fn verify_pullback_with(f: &FieldDesc, n: i64, eta_max: u32, opts: Options) -> Result<PullbackReport> {
    let mwk = presentation(Theory::MWK, f, n, eta_max, opts)?;
    let up = upsilon_map_with(f, n, eta_max, opts)?;
    let vp = varpi_map_with(f, n, eta_max, opts)?;
    let en = e_map_with(f, n, opts)?;
    let pi = ideal_projection(f, n)?;
    let left = up.hom.compose(&pi)?;
    let right = vp.hom.compose(&en.hom)?;
    let square_commutes = left.equals(&right);

    let pb = pullback(&pi, &en.hom)?;
    let coords: Vec<Vec<BigInt>> = (0..mwk.index.len())
        .map(|g| {
            let one = [(g, BigInt::from(1))];
            Ok(pb.pair_coords(&up.hom.apply(&one)?, &vp.hom.apply(&one)?))
        })
        .collect::<Result<_>>()?;
    let phi = GroupHom::from_gen_coords(mwk.group().clone(), pb.sum.group.clone(), &coords)?;
    let induced_injective = phi.is_injective();
    let induced_onto_pullback = same_lattice(&phi.image_lattice(), &pb.kernel.lattice());
    let corners = Corners {
        mwk: mwk.invariant_factors(),
        ideal: ideal(f, n)?.group().invariant_factors(),
        quotient: iota(f, n)?.group().invariant_factors(),
        milnor: en.hom.source().invariant_factors(),
        pullback: pb.group().invariant_factors(),
    };
    Ok(PullbackReport {
        field: f.to_string(),
        degree: n,
        eta_max,
        corners,
        square_commutes,
        induced_injective,
        induced_onto_pullback,
        maps: vec![up.summary(), vp.summary(), en.summary()],
        passed: square_commutes && induced_injective && induced_onto_pullback,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub field: String,
    pub degree: i64,
    pub eta_max: u32,
    pub source_eta_max: u32,
    pub witt_k: InvariantFactors,
    pub mwk: InvariantFactors,
    pub milnor: InvariantFactors,
    pub composite_zero: bool,
    pub image_is_kernel: bool,
    pub varpi_surjective: bool,
    pub epsilon_injective: bool,
    pub maps: Vec<MapSummary>,
    pub passed: bool,
}

/// `0 -> WK_{n+1} -> MWK_n -> K_n -> 0`.
pub fn verify_exact_sequence(f: &FieldDesc, n: i64, eta_max: u32) -> Result<ExactnessReport> {
    verify_exact_sequence_with(f, n, eta_max, Options::default())
}

pub fn verify_exact_sequence_with(f: &FieldDesc, n: i64, eta_max: u32, opts: Options) -> Result<ExactnessReport> {
    let eps = epsilon_map_with(f, n, eta_max, opts)?;
    let vp = varpi_map_with(f, n, eta_max, opts)?;
    let comp = eps.hom.compose(&vp.hom)?;
    let composite_zero = comp.matrix().iter().all(|r| comp.target().coords_is_zero(r));
    let image_is_kernel = same_lattice(&eps.hom.image_lattice(), &vp.hom.kernel()?.lattice());
    let varpi_surjective = vp.hom.is_surjective();
    let epsilon_injective = eps.hom.is_injective();
    Ok(ExactnessReport {
        field: f.to_string(),
        degree: n,
        eta_max,
        source_eta_max: epsilon_source_eta(n, eta_max),
        witt_k: eps.hom.source().invariant_factors(),
        mwk: vp.hom.source().invariant_factors(),
        milnor: vp.hom.target().invariant_factors(),
        composite_zero,
        image_is_kernel,
        varpi_surjective,
        epsilon_injective,
        maps: vec![eps.summary(), vp.summary()],
        passed: composite_zero && image_is_kernel && varpi_surjective && epsilon_injective,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub theory: Theory,
    pub field: String,
    pub degree: i64,
    pub runs: Vec<(u32, InvariantFactors)>,
    pub stable: bool,
}

pub fn stabilization(theory: Theory, f: &FieldDesc, n: i64, etas: &[u32]) -> Result<StabilityReport> {
    let mut runs = Vec::new();
    for &e in etas {
        runs.push((e, presentation(theory, f, n, e, Options::default())?.invariant_factors()));
    }
    let stable = runs.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(StabilityReport { theory, field: f.to_string(), degree: n, runs, stable })
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationCheck {
    pub field: String,
    pub degree: i64,
    pub generators: usize,
    pub relators: usize,
    pub presented: InvariantFactors,
    pub oracle: InvariantFactors,
    pub passed: bool,
}

/// Sign `s` of the first relator `[1] + s[-1]` in degree 0.
pub const HYPERBOLIC_RELATOR_SIGN: i64 = 1;

fn row(k: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut r = vec![0i64; k];
    for &(i, c) in terms {
        r[i] += c;
    }
    r
}

/// The group presented by the relator sets of the presentation theorem for
/// `W` (degree 0), `I` (degree 1) and `I^n` (`n >= 2`).
pub fn presented_power(f: &FieldDesc, n: i64, first_sign: i64) -> Result<(FPAbGroup, usize, usize)> {
    if !f.is_finite() {
        return Err(Error::UnsupportedField(format!("{f} is not finite")));
    }
    let tab = f.tables()?;
    let u = tab.order();
    let m1 = tab.minus_one();
    let witt_pairs: Vec<(u32, u32, u32, u32)> = (0..u)
        .flat_map(|a| (0..u).map(move |b| (a, b)))
        .filter_map(|(a, b)| {
            tab.add_log(a, b).map(|s| (a, b, s, tab.mul_log(tab.mul_log(a, b), s)))
        })
        .collect();
    let k = u as usize;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    if n <= 1 {
        if n <= 0 {
            rows.push(row(k, &[(0, 1), (m1 as usize, first_sign)]));
        } else {
            rows.push(row(k, &[(0, 1)]));
        }
        for a in 0..u {
            for b in 0..u {
                let ab2 = tab.mul_log(a, 2 * b % u);
                rows.push(row(k, &[(ab2 as usize, 1), (a as usize, -1)]));
            }
        }
        for &(a, b, s, t) in &witt_pairs {
            rows.push(row(k, &[(a as usize, 1), (b as usize, 1), (s as usize, -1), (t as usize, -1)]));
        }
        let nrel = rows.len();
        return Ok((FPAbGroup::from_i64(k, &rows)?, k, nrel));
    }
    // generators: isometry classes of n-fold Pfister forms, keyed by Witt class
    let n = n as usize;
    let mut classes: Vec<WittClass> = Vec::new();
    let mut memo = std::collections::HashMap::new();
    let mut class_of = |t: &[u32]| -> Result<usize> {
        if let Some(&c) = memo.get(t) {
            return Ok(c);
        }
        let slots: Vec<FieldElem> = t.iter().map(|&l| f.unit_from_log(l)).collect::<Result<_>>()?;
        let w = WittClass::pfister(&PfisterForm::new(f, slots)?)?;
        let c = match classes.iter().position(|x| x == &w) {
            Some(c) => c,
            None => {
                classes.push(w);
                classes.len() - 1
            }
        };
        memo.insert(t.to_vec(), c);
        Ok(c)
    };
    let tuples = |len: usize| -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..len {
            out = out.into_iter().flat_map(|v| (0..u).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    };
    let mut rels: Vec<Vec<(usize, i64)>> = Vec::new();
    rels.push(vec![(class_of(&vec![0; n])?, 1)]);
    for c in tuples(n - 1) {
        for &(a, b, s, t) in &witt_pairs {
            let w = |x: u32| [vec![x], c.clone()].concat();
            rels.push(vec![
                (class_of(&w(a))?, 1),
                (class_of(&w(b))?, 1),
                (class_of(&w(s))?, -1),
                (class_of(&w(t))?, -1),
            ]);
        }
    }
    for d in tuples(n - 2) {
        for a in 0..u {
            for b in 0..u {
                for c in 0..u {
                    let w = |x: u32, y: u32| [vec![x, y], d.clone()].concat();
                    rels.push(vec![
                        (class_of(&w(a, b))?, 1),
                        (class_of(&w(tab.mul_log(a, b), c))?, 1),
                        (class_of(&w(b, c))?, -1),
                        (class_of(&w(a, tab.mul_log(b, c)))?, -1),
                    ]);
                }
            }
        }
    }
    let k = classes.len();
    let rows: Vec<Vec<i64>> = rels.iter().map(|r| row(k, r)).collect();
    Ok((FPAbGroup::from_i64(k, &rows)?, k, rows.len()))
}

/// Presented `W`, `I` or `I^n` against the brute-force Witt table.
pub fn presentation_check_i_n(f: &FieldDesc, n: i64) -> Result<PresentationCheck> {
    let (g, generators, relators) = presented_power(f, n, HYPERBOLIC_RELATOR_SIGN)?;
    let table = enumerate_witt_group(f)?;
    let members: BTreeSet<usize> =
        if n <= 0 { (0..table.len()).collect() } else { table.power_members(n as usize)? };
    let oracle = table.subgroup(&members)?.invariant_factors();
    let presented = g.invariant_factors();
    Ok(PresentationCheck {
        field: f.to_string(),
        degree: n,
        generators,
        relators,
        passed: presented == oracle,
        presented,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_examples() {
        let f = FieldDesc::prime(7).unwrap();
        let r = verify_pullback(&f, 0, 2).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.corners.pullback, InvariantFactors::new(1, &[2]));
        let r = verify_pullback(&f, 2, 2).unwrap();
        assert!(r.passed && r.corners.mwk.is_trivial() && r.corners.pullback.is_trivial());
        let r = verify_pullback(&f, -1, 2).unwrap();
        assert!(r.passed);
        assert_eq!(r.corners.pullback, InvariantFactors::new(0, &[4]));
    }

    #[test]
    fn exact_sequence_examples() {
        let f = FieldDesc::prime(7).unwrap();
        let r = verify_exact_sequence(&f, 1, 2).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.mwk, InvariantFactors::new(0, &[6]));
        let r = verify_exact_sequence(&f, 0, 2).unwrap();
        assert!(r.passed);
        assert_eq!(r.witt_k, InvariantFactors::new(0, &[2]));
        let f3 = FieldDesc::prime(3).unwrap();
        for n in -1..=2 {
            assert!(verify_exact_sequence(&f3, n, 1).unwrap().passed);
        }
    }

    #[test]
    fn presentation_examples() {
        let f7 = FieldDesc::prime(7).unwrap();
        let f5 = FieldDesc::prime(5).unwrap();
        assert_eq!(presentation_check_i_n(&f7, 0).unwrap().presented, InvariantFactors::new(0, &[4]));
        assert_eq!(presentation_check_i_n(&f5, 0).unwrap().presented, InvariantFactors::new(0, &[2, 2]));
        let c = presentation_check_i_n(&f7, 2).unwrap();
        assert!(c.passed && c.presented.is_trivial());
        // the relator [1] - [-1] leaves W(F_7) free of rank one
        let (g, _, _) = presented_power(&f7, 0, -1).unwrap();
        assert_eq!(g.invariant_factors(), InvariantFactors::new(1, &[]));
    }
}
