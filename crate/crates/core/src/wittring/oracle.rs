//! Brute-force Witt group of a finite field.
//!
//! Forms are kept as Gram matrices. A form is reduced by exhaustive search
//! for an isotropic vector and splitting off the hyperbolic plane it spans
//! with a partner; anisotropic forms are compared by searching for a basis
//! with matching Gram matrix. No discriminant or Hasse data is consulted.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fields::{FieldDesc, FieldElem};
use crate::fpgroup::FPAbGroup;

type Mat = Vec<Vec<FieldElem>>;

#[derive(Clone, Debug)]
pub struct WittTable {
    field: FieldDesc,
    /// Anisotropic Gram matrices, one per class; index 0 is the zero class.
    reps: Vec<Mat>,
    add: Vec<Vec<usize>>,
    elems: Vec<FieldElem>,
}

fn bil(m: &Mat, x: &[FieldElem], y: &[FieldElem], zero: &FieldElem) -> FieldElem {
    let mut acc = zero.clone();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                acc = acc.add(&xi.mul(&m[i][j]).mul(yj));
            }
        }
    }
    acc
}

fn all_vectors(elems: &[FieldElem], n: usize) -> Vec<Vec<FieldElem>> {
    let mut out: Vec<Vec<FieldElem>> = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| elems.iter().map(move |e| {
            let mut w = v.clone();
            w.push(e.clone());
            w
        })).collect();
    }
    out
}

/// Basis of `{u : A u = 0}`.
fn nullspace(rows: &[Vec<FieldElem>], n: usize, f: &FieldDesc) -> Result<Vec<Vec<FieldElem>>> {
    let mut a: Vec<Vec<FieldElem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let inv = a[r][c].inv()?;
        a[r] = a[r].iter().map(|x| x.mul(&inv)).collect();
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                let row = a[r].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].sub(&k.mul(&row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut u = vec![f.zero(); n];
        u[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            u[pc] = a[i][free].neg();
        }
        out.push(u);
    }
    Ok(out)
}

impl WittTable {
    fn zero(&self) -> FieldElem {
        self.field.zero()
    }

    /// Anisotropic part of `m`.
    fn reduce(&self, m: &Mat) -> Result<Mat> {
        let n = m.len();
        let z = self.zero();
        let iso = all_vectors(&self.elems, n)
            .into_iter()
            .find(|v| v.iter().any(|x| !x.is_zero()) && bil(m, v, v, &z).is_zero());
        let Some(v) = iso else { return Ok(m.clone()) };
        let mv: Vec<FieldElem> = (0..n).map(|j| bil(m, &v, &unit_vec(&self.field, n, j), &z)).collect();
        let j = mv.iter().position(|x| !x.is_zero()).ok_or(Error::Degenerate)?;
        let w = unit_vec(&self.field, n, j);
        let mw: Vec<FieldElem> = (0..n).map(|k| bil(m, &w, &unit_vec(&self.field, n, k), &z)).collect();
        let basis = nullspace(&[mv, mw], n, &self.field)?;
        let sub: Mat = basis.iter().map(|x| basis.iter().map(|y| bil(m, x, y, &z)).collect()).collect();
        self.reduce(&sub)
    }

    /// A basis `x_1..x_k` with `x_i^T m x_j = t_ij`.
    fn isometric(&self, m: &Mat, t: &Mat) -> Result<bool> {
        let k = m.len();
        if k != t.len() {
            return Ok(false);
        }
        let z = self.zero();
        let vecs = all_vectors(&self.elems, k);
        let mut rows: Vec<Vec<FieldElem>> = Vec::new();
        fn search(
            tab: &WittTable,
            m: &Mat,
            t: &Mat,
            vecs: &[Vec<FieldElem>],
            rows: &mut Vec<Vec<FieldElem>>,
            z: &FieldElem,
        ) -> Result<bool> {
            let i = rows.len();
            if i == m.len() {
                return Ok(nullspace(rows, m.len(), &tab.field)?.is_empty());
            }
            for v in vecs {
                if bil(m, v, v, z) != t[i][i] {
                    continue;
                }
                if (0..i).any(|j| bil(m, v, &rows[j], z) != t[i][j]) {
                    continue;
                }
                rows.push(v.clone());
                if search(tab, m, t, vecs, rows, z)? {
                    return Ok(true);
                }
                rows.pop();
            }
            Ok(false)
        }
        search(self, m, t, &vecs, &mut rows, &z)
    }

    fn class_of(&self, m: &Mat) -> Result<usize> {
        let r = self.reduce(m)?;
        for (i, rep) in self.reps.iter().enumerate() {
            if self.isometric(&r, rep)? {
                return Ok(i);
            }
        }
        Err(Error::NotRepresented)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Rank of the anisotropic representative of class `i`.
    pub fn anisotropic_rank(&self, i: usize) -> usize {
        self.reps[i].len()
    }

    pub fn sum(&self, i: usize, j: usize) -> usize {
        self.add[i][j]
    }

    /// Class of the diagonal form with the given entries.
    pub fn class_of_diagonal(&self, d: &[FieldElem]) -> Result<usize> {
        let n = d.len();
        let m = (0..n).map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { self.zero() }).collect()).collect();
        self.class_of(&m)
    }

    /// Regular presentation of the subgroup of the listed classes.
    pub fn subgroup(&self, members: &BTreeSet<usize>) -> Result<FPAbGroup> {
        let idx: Vec<usize> = members.iter().copied().collect();
        let pos = |c: usize| idx.iter().position(|&x| x == c).ok_or(Error::NotRepresented);
        let k = idx.len();
        let mut rows = Vec::new();
        for a in 0..k {
            for b in a..k {
                let mut r = vec![0i64; k];
                r[a] += 1;
                r[b] += 1;
                r[pos(self.add[idx[a]][idx[b]])?] -= 1;
                rows.push(r);
            }
        }
        let mut r = vec![0i64; k];
        r[pos(0)?] = 1;
        rows.push(r);
        FPAbGroup::from_i64(k, &rows)
    }

    pub fn group(&self) -> Result<FPAbGroup> {
        self.subgroup(&(0..self.len()).collect())
    }

    /// Classes in the subgroup generated by the `n`-fold Pfister forms.
    pub fn power_members(&self, n: usize) -> Result<BTreeSet<usize>> {
        let units = self.field.units()?;
        let mut gens = BTreeSet::new();
        for a in all_vectors(&units, n) {
            let mut entries = vec![self.field.one()];
            for x in &a {
                let mut next = entries.clone();
                next.extend(entries.iter().map(|e| e.mul(x).neg()));
                entries = next;
            }
            gens.insert(self.class_of_diagonal(&entries)?);
        }
        let mut members: BTreeSet<usize> = [0].into();
        loop {
            let mut grew = false;
            for m in members.clone() {
                for &g in &gens {
                    grew |= members.insert(self.add[m][g]);
                }
            }
            if !grew {
                return Ok(members);
            }
        }
    }
}

fn unit_vec(f: &FieldDesc, n: usize, j: usize) -> Vec<FieldElem> {
    (0..n).map(|i| if i == j { f.one() } else { f.zero() }).collect()
}

pub fn enumerate_witt_group(f: &FieldDesc) -> Result<WittTable> {
    if !f.is_finite() {
        return Err(Error::UnsupportedField(format!("{f} is not finite")));
    }
    let elems = f.elements()?;
    let units = f.units()?;
    let mut tab = WittTable { field: f.clone(), reps: vec![Vec::new()], add: Vec::new(), elems };
    for n in 1..=3 {
        for d in all_vectors(&units, n) {
            if n == 3 && !d[0].is_one() {
                continue;
            }
            let m: Mat = (0..n).map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { f.zero() }).collect()).collect();
            if tab.class_of(&m).is_err() {
                let r = tab.reduce(&m)?;
                tab.reps.push(r);
            }
        }
    }
    let k = tab.reps.len();
    let mut add = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let (a, b) = (&tab.reps[i], &tab.reps[j]);
            let n = a.len() + b.len();
            let mut m = vec![vec![f.zero(); n]; n];
            for (r, row) in a.iter().enumerate() {
                m[r][..a.len()].clone_from_slice(row);
            }
            for (r, row) in b.iter().enumerate() {
                m[a.len() + r][a.len()..].clone_from_slice(row);
            }
            add[i][j] = tab.class_of(&m)?;
        }
    }
    tab.add = add;
    Ok(tab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::InvariantFactors;

    #[test]
    fn small_witt_groups() {
        let f7 = FieldDesc::prime(7).unwrap();
        let t = enumerate_witt_group(&f7).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.group().unwrap().invariant_factors(), InvariantFactors::new(0, &[4]));
        // <1> generates
        let one = t.class_of_diagonal(&[f7.one()]).unwrap();
        let mut x = one;
        let mut order = 1;
        while x != 0 {
            x = t.sum(x, one);
            order += 1;
        }
        assert_eq!(order, 4);
        for q in [5, 9] {
            let f = FieldDesc::galois(q).unwrap();
            let t = enumerate_witt_group(&f).unwrap();
            assert_eq!(t.group().unwrap().invariant_factors(), InvariantFactors::new(0, &[2, 2]));
        }
        assert!(enumerate_witt_group(&FieldDesc::rationals()).is_err());
    }

    #[test]
    fn pfister_powers() {
        let f = FieldDesc::prime(7).unwrap();
        let t = enumerate_witt_group(&f).unwrap();
        assert_eq!(t.power_members(1).unwrap().len(), 2);
        assert_eq!(t.power_members(2).unwrap().len(), 1);
    }
}
