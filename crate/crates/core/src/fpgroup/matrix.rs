use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

pub type SparseRow = Vec<(usize, BigInt)>;
pub type Dense = Vec<Vec<BigInt>>;

/// Integer matrix with sparse rows; each row sorted by column, no zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: Vec<SparseRow>,
    cols: usize,
}

impl IntMatrix {
    pub fn new(cols: usize) -> Self {
        IntMatrix { rows: Vec::new(), cols }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows: vec![Vec::new(); rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix { rows: (0..n).map(|i| vec![(i, BigInt::one())]).collect(), cols: n }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::new(cols);
        for r in rows {
            m.push_dense(&r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())?;
        }
        Ok(m)
    }

    pub fn from_dense(rows: &Dense, cols: usize) -> Result<Self> {
        let mut m = IntMatrix::new(cols);
        for r in rows {
            m.push_dense(r)?;
        }
        Ok(m)
    }

    pub fn push_dense(&mut self, r: &[BigInt]) -> Result<()> {
        if r.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: r.len() });
        }
        self.rows.push(
            r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect(),
        );
        Ok(())
    }

    /// Adds a row given as unsorted `(col, coeff)` pairs; duplicates are summed.
    pub fn push_sparse(&mut self, mut r: SparseRow) -> Result<()> {
        if let Some(&(j, _)) = r.iter().find(|(j, _)| *j >= self.cols) {
            return Err(Error::DimensionMismatch { expected: self.cols, got: j + 1 });
        }
        r.sort_by_key(|e| e.0);
        let mut out: SparseRow = Vec::with_capacity(r.len());
        for (j, x) in r {
            match out.last_mut() {
                Some((k, y)) if *k == j => *y += x,
                _ => out.push((j, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        self.rows.push(out);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.rows.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.rows[i]
            .binary_search_by_key(&j, |e| e.0)
            .map_or_else(|_| BigInt::zero(), |k| self.rows[i][k].1.clone())
    }

    pub fn to_dense(&self) -> Dense {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![BigInt::zero(); self.cols];
                for (j, x) in r {
                    d[*j] = x.clone();
                }
                d
            })
            .collect()
    }

    pub fn mul(&self, o: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != o.nrows() {
            return Err(Error::DimensionMismatch { expected: self.cols, got: o.nrows() });
        }
        let mut out = IntMatrix::new(o.cols);
        for r in &self.rows {
            let mut acc: SparseRow = Vec::new();
            for (k, x) in r {
                for (j, y) in &o.rows[*k] {
                    acc.push((*j, x * y));
                }
            }
            out.push_sparse(acc)?;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                t.rows[*j].push((i, x.clone()));
            }
        }
        t
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for r in self.to_dense() {
            seq.serialize_element(&r.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        }
        seq.end()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_dense() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn dense_mul(a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    a.iter()
        .map(|r| {
            let mut out = vec![BigInt::zero(); cols];
            for k in 0..inner {
                if r[k].is_zero() {
                    continue;
                }
                for j in 0..cols {
                    if !b[k][j].is_zero() {
                        out[j] += &r[k] * &b[k][j];
                    }
                }
            }
            out
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(v: &[BigInt], m: &Dense, cols: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); cols];
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for j in 0..cols {
            if !m[k][j].is_zero() {
                out[j] += x * &m[k][j];
            }
        }
    }
    out
}
