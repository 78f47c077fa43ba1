use std::fmt;

use super::{split_args, split_call, QuadForm};
use crate::error::{Error, Result};
use crate::fields::{FieldDesc, FieldElem};

/// Symmetric matrix `m` with `q(x) = x^T m x`; the diagonal holds `q(e_i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramMatrix {
    field: FieldDesc,
    m: Vec<Vec<FieldElem>>,
}

impl GramMatrix {
    pub fn new(field: &FieldDesc, m: Vec<Vec<FieldElem>>) -> Result<Self> {
        let n = m.len();
        for row in &m {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            for x in row {
                field.require_same(x.field())?;
            }
        }
        for i in 0..n {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(GramMatrix { field: field.clone(), m })
    }

    pub fn from_i64(field: &FieldDesc, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(field, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn diagonal(field: &FieldDesc, d: &[FieldElem]) -> Self {
        let n = d.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { field.zero() }).collect())
            .collect();
        GramMatrix { field: field.clone(), m }
    }

    /// `[[a,b],[b,c]]@TAG`.
    pub fn parse(s: &str) -> Result<Self> {
        let src = format!("m{}", s.trim()).replacen('[', "(", 1);
        // offsets below count the inserted "m"
        let (_, body, field, off) = split_call(&src)?;
        let rows = split_args(body, off - 1)?;
        let mut m = Vec::new();
        for (o, r) in rows {
            let lead = r.len() - r.trim_start().len();
            let inner = r
                .trim()
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or(Error::Parse { pos: o + lead, expected: "'[' row ']'".into() })?;
            let entries = split_args(inner, o + lead + 1)?;
            m.push(entries.iter().map(|(eo, e)| field.parse_elem_at(e, *eo)).collect::<Result<Vec<_>>>()?);
        }
        Self::new(&field, m)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn rows(&self) -> &[Vec<FieldElem>] {
        &self.m
    }

    fn check_vec(&self, v: &[FieldElem]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// `v^T m w`.
    fn inner(&self, v: &[FieldElem], w: &[FieldElem]) -> FieldElem {
        let mut acc = self.field.zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if !wj.is_zero() && !self.m[i][j].is_zero() {
                    acc = acc.add(&vi.mul(&self.m[i][j]).mul(wj));
                }
            }
        }
        acc
    }

    pub fn eval(&self, v: &[FieldElem]) -> Result<FieldElem> {
        self.check_vec(v)?;
        Ok(self.inner(v, v))
    }

    pub fn polar(&self, v: &[FieldElem], w: &[FieldElem]) -> Result<FieldElem> {
        self.check_vec(v)?;
        self.check_vec(w)?;
        let s = self.inner(v, w);
        Ok(s.add(&s))
    }

    pub fn reflect(&self, v: &[FieldElem], x: &[FieldElem]) -> Result<Vec<FieldElem>> {
        let qv = self.eval(v)?;
        if qv.is_zero() {
            return Err(Error::IsotropicVector);
        }
        let c = self.polar(v, x)?.div(&qv)?;
        Ok(x.iter().zip(v).map(|(xi, vi)| xi.sub(&c.mul(vi))).collect())
    }

    pub fn det(&self) -> FieldElem {
        let n = self.dim();
        let mut a = self.m.clone();
        let mut det = self.field.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return self.field.zero();
            };
            if p != k {
                a.swap(p, k);
                det = det.neg();
            }
            det = det.mul(&a[k][k]);
            let inv = a[k][k].inv().unwrap();
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let c = a[i][k].mul(&inv);
                for j in k..n {
                    let t = c.mul(&a[k][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
        det
    }

    /// Diagonal form and basis `P` (rows are the new basis vectors) with
    /// `P m P^T` diagonal.
    pub fn diagonalize_with_basis(&self) -> Result<(QuadForm, Vec<Vec<FieldElem>>)> {
        let n = self.dim();
        let f = &self.field;
        let mut a = self.m.clone();
        let mut b: Vec<Vec<FieldElem>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        // congruence: row_i += c row_j and col_i += c col_j
        let add = |a: &mut Vec<Vec<FieldElem>>, b: &mut Vec<Vec<FieldElem>>, i: usize, j: usize, c: &FieldElem| {
            for k in 0..n {
                let t = c.mul(&a[j][k]);
                a[i][k] = a[i][k].add(&t);
            }
            for k in 0..n {
                let t = c.mul(&a[k][j]);
                a[k][i] = a[k][i].add(&t);
            }
            for k in 0..n {
                let t = c.mul(&b[j][k]);
                b[i][k] = b[i][k].add(&t);
            }
        };
        for k in 0..n {
            let pivot = match (k..n).find(|&i| !a[i][i].is_zero()) {
                Some(i) => i,
                None => {
                    // all remaining diagonal entries vanish: e_i + e_j has value 2 m_ij
                    let (i, j) = (k..n)
                        .flat_map(|i| (k..n).map(move |j| (i, j)))
                        .find(|&(i, j)| i != j && !a[i][j].is_zero())
                        .ok_or(Error::Degenerate)?;
                    add(&mut a, &mut b, i, j, &f.one());
                    i
                }
            };
            if pivot != k {
                a.swap(pivot, k);
                for row in a.iter_mut() {
                    row.swap(pivot, k);
                }
                b.swap(pivot, k);
            }
            let inv = a[k][k].inv()?;
            for i in k + 1..n {
                if !a[i][k].is_zero() {
                    let c = a[i][k].mul(&inv).neg();
                    add(&mut a, &mut b, i, k, &c);
                }
            }
        }
        let d = (0..n).map(|i| a[i][i].clone()).collect();
        Ok((QuadForm::new(f, d)?, b))
    }

    pub fn diagonalize(&self) -> Result<QuadForm> {
        Ok(self.diagonalize_with_basis()?.0)
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]@{}", rows.join(","), self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalize_examples() {
        let q = FieldDesc::rationals();
        let h = GramMatrix::from_i64(&q, &[vec![0, 1], vec![1, 0]]).unwrap();
        let d = h.diagonalize().unwrap();
        assert!(d.is_isometric(&QuadForm::from_i64(&q, &[1, -1]).unwrap()).unwrap());

        let f7 = FieldDesc::prime(7).unwrap();
        let g = GramMatrix::from_i64(&f7, &[vec![3, 0], vec![0, 5]]).unwrap();
        assert_eq!(g.diagonalize().unwrap(), QuadForm::from_i64(&f7, &[3, 5]).unwrap());

        let g = GramMatrix::from_i64(&q, &[vec![2, 1], vec![1, 2]]).unwrap();
        let d = g.diagonalize().unwrap();
        assert_eq!(crate::fields::square_class(&d.det()).unwrap().rep(), &q.from_i64(3));
    }

    #[test]
    fn basis_is_congruence() {
        let q = FieldDesc::rationals();
        let g = GramMatrix::from_i64(&q, &[vec![0, 1, 2], vec![1, 0, 3], vec![2, 3, 0]]).unwrap();
        let (d, b) = g.diagonalize_with_basis().unwrap();
        for i in 0..3 {
            assert_eq!(g.eval(&b[i]).unwrap(), d.entries()[i]);
            for j in 0..i {
                assert!(g.polar(&b[i], &b[j]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn degenerate_and_asymmetric() {
        let q = FieldDesc::rationals();
        let g = GramMatrix::from_i64(&q, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(g.diagonalize(), Err(Error::Degenerate));
        assert_eq!(GramMatrix::from_i64(&q, &[vec![1, 2], vec![3, 1]]), Err(Error::NotSymmetric));
    }

    #[test]
    fn parse_round_trip() {
        let g = GramMatrix::parse("[[0,1],[1,0]]@QQ").unwrap();
        assert_eq!(g.dim(), 2);
        assert_eq!(GramMatrix::parse(&g.to_string()).unwrap(), g);
    }
}
