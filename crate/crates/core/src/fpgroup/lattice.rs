//! Integer row lattices kept in echelon form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::Dense;
use super::snf::smith_normal_form_dense;

/// Echelon basis of a sublattice of `Z^n`: one row per leading column,
/// leading entries positive.
#[derive(Clone, Debug, Default)]
pub struct Lattice {
    n: usize,
    rows: std::collections::BTreeMap<usize, Vec<BigInt>>,
}

fn lead(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn axpy(v: &mut [BigInt], c: &BigInt, r: &[BigInt]) {
    for (x, y) in v.iter_mut().zip(r) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

impl Lattice {
    pub fn new(n: usize) -> Self {
        Lattice { n, rows: Default::default() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &[BigInt]) {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        while let Some(j) = lead(&v) {
            let Some(r) = self.rows.get_mut(&j) else {
                if v[j].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(j, v);
                return;
            };
            if v[j].is_multiple_of(&r[j]) {
                let q = -(&v[j] / &r[j]);
                axpy(&mut v, &q, r);
                continue;
            }
            // replace r by s r + t v (gcd in column j) and continue with the
            // unimodular complement, which vanishes at j
            let e = r[j].extended_gcd(&v[j]);
            let (a, b) = (&r[j] / &e.gcd, &v[j] / &e.gcd);
            let mut new_r: Vec<BigInt> = r.iter().map(|x| &e.x * x).collect();
            axpy(&mut new_r, &e.y, &v);
            let mut rest: Vec<BigInt> = r.iter().map(|x| &b * x).collect();
            axpy(&mut rest, &-a, &v);
            if new_r[j].is_negative() {
                new_r.iter_mut().for_each(|x| *x = -&*x);
            }
            *r = new_r;
            v = rest;
        }
    }

    pub fn basis(&self) -> Dense {
        self.rows.values().cloned().collect()
    }

    /// Membership by exact echelon reduction.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        while let Some(j) = lead(&v) {
            match self.rows.get(&j) {
                Some(r) if v[j].is_multiple_of(&r[j]) => {
                    let q = -(&v[j] / &r[j]);
                    axpy(&mut v, &q, r);
                }
                _ => return false,
            }
        }
        true
    }

    /// Integer `x` with `x * basis() = v`, if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let keys: Vec<usize> = self.rows.keys().copied().collect();
        let mut x = vec![BigInt::zero(); keys.len()];
        let mut v = v.to_vec();
        while let Some(j) = lead(&v) {
            let k = keys.binary_search(&j).ok()?;
            let r = &self.rows[&j];
            if !v[j].is_multiple_of(&r[j]) {
                return None;
            }
            let q = &v[j] / &r[j];
            axpy(&mut v, &-&q, r);
            x[k] += q;
        }
        Some(x)
    }
}

/// Integer left kernel `{x : x M = 0}` of an `rows x cols` matrix.
pub fn left_kernel(m: &Dense, rows: usize, cols: usize) -> Dense {
    let s = smith_normal_form_dense(m, rows, cols);
    s.u[s.rank..].to_vec()
}
