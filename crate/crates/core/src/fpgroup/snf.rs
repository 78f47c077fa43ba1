//! Dense Smith normal form with both transforms and their inverses.
//!
//! Every call re-checks `U A V = D`, `U Uinv = I` and `V Vinv = I` exactly;
//! the inverse identities certify that `U` and `V` are unimodular.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{dense_mul, identity, Dense, IntMatrix};

#[derive(Clone, Debug)]
pub struct Snf {
    pub rows: usize,
    pub cols: usize,
    pub u: Dense,
    pub uinv: Dense,
    pub v: Dense,
    pub vinv: Dense,
    /// Diagonal of `D`, length `min(rows, cols)`; nonnegative, `d_i | d_{i+1}`
    /// up to the rank, zero after.
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

impl Snf {
    pub fn d_matrix(&self) -> Dense {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, x) in self.diag.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }

    /// Nontrivial invariant factors (`d_i > 1`).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag[..self.rank].iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct State {
    a: Dense,
    u: Dense,
    uinv: Dense,
    v: Dense,
    vinv: Dense,
}

impl State {
    /// row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let (ri, rj) = pair_mut(m, i, j);
            for (x, y) in ri.iter_mut().zip(rj.iter()) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        // uinv: col_j -= c * col_i
        for r in self.uinv.iter_mut() {
            if !r[i].is_zero() {
                let t = c * &r[i];
                r[j] -= t;
            }
        }
    }

    /// col_i += c * col_j
    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in m.iter_mut() {
                if !r[j].is_zero() {
                    let t = c * &r[j];
                    r[i] += t;
                }
            }
        }
        // vinv: row_j -= c * row_i
        let (rj, ri) = pair_mut(&mut self.vinv, j, i);
        for (x, y) in rj.iter_mut().zip(ri.iter()) {
            if !y.is_zero() {
                *x -= c * y;
            }
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for r in self.uinv.iter_mut() {
            r.swap(i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
        self.vinv.swap(i, j);
    }

    fn row_neg(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for r in self.uinv.iter_mut() {
            r[i] = -&r[i];
        }
    }
}

fn pair_mut<T>(m: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = m.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = m.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    smith_normal_form_dense(&m.to_dense(), m.nrows(), m.ncols())
}

pub fn smith_normal_form_dense(a: &Dense, rows: usize, cols: usize) -> Snf {
    let mut s = State {
        a: a.clone(),
        u: identity(rows),
        uinv: identity(rows),
        v: identity(cols),
        vinv: identity(cols),
    };
    let k = rows.min(cols);
    let mut rank = 0;
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &s.a[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            s.row_swap(t, bi);
            s.col_swap(t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                if !s.a[i][t].is_zero() {
                    let q = s.a[i][t].div_floor(&s.a[t][t]);
                    s.row_add(i, t, &-q);
                    clean &= s.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !s.a[t][j].is_zero() {
                    let q = s.a[t][j].div_floor(&s.a[t][t]);
                    s.col_add(j, t, &-q);
                    clean &= s.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let p = s.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => s.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if s.a[t][t].is_zero() {
            break;
        }
        if s.a[t][t].is_negative() {
            s.row_neg(t);
        }
        rank = t + 1;
    }
    let diag = (0..k).map(|i| s.a[i][i].clone()).collect();
    let out = Snf { rows, cols, u: s.u, uinv: s.uinv, v: s.v, vinv: s.vinv, diag, rank };
    verify(&out, a);
    out
}

fn verify(s: &Snf, a: &Dense) {
    let uav = dense_mul(&dense_mul(&s.u, a, s.rows, s.cols), &s.v, s.cols, s.cols);
    assert!(uav == s.d_matrix(), "SNF check U*A*V = D failed");
    assert!(dense_mul(&s.u, &s.uinv, s.rows, s.rows) == identity(s.rows), "U not unimodular");
    assert!(dense_mul(&s.v, &s.vinv, s.cols, s.cols) == identity(s.cols), "V not unimodular");
    for i in 1..s.rank {
        assert!(s.diag[i].is_multiple_of(&s.diag[i - 1]), "divisibility chain broken");
    }
    assert!(s.diag[s.rank..].iter().all(|d| d.is_zero()));
}
