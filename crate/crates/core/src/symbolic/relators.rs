//! Relator families and their two-sided instances `eta^s * x * rho * y`.
//!
//! An instance is emitted only if every term lands in the truncation, so
//! each emitted row is a genuine relation of the untruncated group.

use super::words::WordIndex;
use super::Theory;
use crate::fields::FiniteTables;
use crate::fpgroup::RelatorSource;

/// `coef * eta^r * letters`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: i64,
    pub r: u32,
    pub letters: Vec<u32>,
}

fn t(coef: i64, r: u32, letters: Vec<u32>) -> Term {
    Term { coef, r, letters }
}

/// All instances of one relator family over the units, before context.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: &'static str,
    pub degree: i64,
    pub max_r: u32,
    pub instances: Vec<Vec<Term>>,
}

fn family(name: &'static str, instances: Vec<Vec<Term>>) -> Family {
    let first = &instances[0][0];
    let degree = first.letters.len() as i64 - first.r as i64;
    let max_r = instances.iter().flatten().map(|x| x.r).max().unwrap_or(0);
    Family { name, degree, max_r, instances }
}

/// Relators of `theory`; `mw2_sign` is the coefficient of `eta{a}{b}` in MW2.
pub fn families(theory: Theory, tab: &FiniteTables, mw2_sign: i64) -> Vec<Family> {
    let u = tab.order();
    let m1 = tab.minus_one();
    let pairs = || (0..u).flat_map(move |a| (0..u).map(move |b| (a, b)));
    let steinberg: Vec<Vec<Term>> =
        (0..u).filter_map(|a| tab.one_minus(a).map(|b| vec![t(1, 0, vec![a, b])])).collect();
    let additive = |eta: Option<i64>| -> Vec<Vec<Term>> {
        pairs()
            .map(|(a, b)| {
                let mut v = vec![t(1, 0, vec![tab.mul_log(a, b)]), t(-1, 0, vec![a]), t(-1, 0, vec![b])];
                if let Some(c) = eta {
                    v.push(t(c, 1, vec![a, b]));
                }
                v
            })
            .collect()
    };
    match theory {
        Theory::KM => vec![family("bilinearity", additive(None)), family("steinberg", steinberg)],
        Theory::WK => vec![
            family("WK2", additive(Some(1))),
            family("WK3", steinberg),
            family("WK4", vec![vec![t(2, 0, vec![]), t(-1, 1, vec![m1])]]),
        ],
        Theory::MWK => vec![
            family("MW2", additive(Some(mw2_sign))),
            family("MW3", steinberg),
            family("MW4", vec![vec![t(2, 1, vec![]), t(1, 2, vec![m1])]]),
        ],
    }
}

/// Streams every instance of every family that fits the truncation.
pub struct Instances<'a> {
    pub index: &'a WordIndex,
    pub families: &'a [Family],
}

impl Instances<'_> {
    fn emit(&self, f: &mut dyn FnMut(&[(usize, i64)])) {
        let idx = self.index;
        if idx.is_empty() {
            return;
        }
        let base = idx.base as usize;
        let pow = |k: usize| base.pow(k as u32);
        let mut row: Vec<(usize, i64)> = Vec::new();
        for fam in self.families {
            for s in 0..=idx.r_max {
                if s + fam.max_r > idx.r_max {
                    break;
                }
                let m = idx.degree - fam.degree + s as i64;
                if m < 0 {
                    continue;
                }
                let m = m as usize;
                for xlen in 0..=m {
                    let ylen = m - xlen;
                    for inst in &fam.instances {
                        // (target level offset, shift for x, shifted core value)
                        let terms: Vec<(usize, usize, usize, i64)> = inst
                            .iter()
                            .map(|tm| {
                                let r = s + tm.r;
                                let core = tm.letters.iter().fold(0usize, |v, &l| v * base + l as usize);
                                (idx.offset(r), pow(tm.letters.len() + ylen), core * pow(ylen), tm.coef)
                            })
                            .collect();
                        for xv in 0..pow(xlen) {
                            for yv in 0..pow(ylen) {
                                row.clear();
                                for &(off, xs, cv, c) in &terms {
                                    row.push((off + xv * xs + cv + yv, c));
                                }
                                merge(&mut row);
                                if !row.is_empty() {
                                    f(&row);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

fn merge(row: &mut Vec<(usize, i64)>) {
    row.sort_unstable_by_key(|e| e.0);
    let mut w = 0;
    for i in 0..row.len() {
        if w > 0 && row[w - 1].0 == row[i].0 {
            row[w - 1].1 += row[i].1;
        } else {
            row[w] = row[i];
            w += 1;
        }
    }
    row.truncate(w);
    row.retain(|e| e.1 != 0);
}

impl RelatorSource for Instances<'_> {
    fn num_gens(&self) -> usize {
        self.index.len()
    }

    fn for_each_relator(&self, f: &mut dyn FnMut(&[(usize, i64)])) {
        self.emit(f)
    }
}
