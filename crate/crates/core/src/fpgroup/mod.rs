//! Finitely presented abelian groups.
//!
//! A presentation is fed row by row through the sparse eliminator; what is
//! left is a small lattice on the non-pivot generators, which is put into
//! Smith normal form. Elements are read off in SNF coordinates: torsion
//! coordinates first (reduced into `[0, d)`), then free coordinates.

pub mod hom;
pub mod lattice;
pub mod matrix;
pub mod snf;
pub mod sparse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

pub use hom::{direct_sum, pullback, span_lattice, DirectSum, GroupHom, Pullback, Subgroup};
pub use lattice::Lattice;
pub use matrix::{Dense, IntMatrix, SparseRow};
pub use snf::{smith_normal_form, smith_normal_form_dense, Snf};

use crate::error::{Error, Result};
use sparse::{Eliminator, Scratch};

/// `Z^free + sum Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantFactors {
    pub free: usize,
    #[serde(serialize_with = "ser_bigs")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigs<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl InvariantFactors {
    pub fn new(free: usize, torsion: &[i64]) -> Self {
        InvariantFactors { free, torsion: torsion.iter().map(|&d| BigInt::from(d)).collect() }
    }

    pub fn trivial() -> Self {
        Self::new(0, &[])
    }

    pub fn is_trivial(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    /// Order, or `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free == 0).then(|| self.torsion.iter().product())
    }
}

impl std::fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free > 0 {
            parts.push(if self.free == 1 { "Z".into() } else { format!("Z^{}", self.free) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Streams relator rows with small integer coefficients.
pub trait RelatorSource {
    fn num_gens(&self) -> usize;
    fn for_each_relator(&self, f: &mut dyn FnMut(&[(usize, i64)]));
}

#[derive(Clone, Debug)]
enum Elim {
    Small(Eliminator<i64>),
    Big(Eliminator<BigInt>),
}

impl Elim {
    fn reduce_vector(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        match self {
            Elim::Small(e) => e.reduce_vector(v),
            Elim::Big(e) => e.reduce_vector(v),
        }
    }

    fn is_pivot(&self, j: usize) -> bool {
        match self {
            Elim::Small(e) => e.is_pivot(j),
            Elim::Big(e) => e.is_pivot(j),
        }
    }

    fn final_hard_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        match self {
            Elim::Small(e) => e.final_hard_rows(),
            Elim::Big(e) => e.final_hard_rows(),
        }
    }

    fn pivot_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        fn conv<C: sparse::Coeff>(e: &Eliminator<C>) -> Vec<Vec<(usize, BigInt)>> {
            e.pivots().iter().map(|p| p.row.iter().map(|(j, a)| (*j, a.to_big())).collect()).collect()
        }
        match self {
            Elim::Small(e) => conv(e),
            Elim::Big(e) => conv(e),
        }
    }

    fn stats(&self) -> (usize, usize, usize) {
        match self {
            Elim::Small(e) => (e.rows_seen(), e.pivots().len(), e.fill()),
            Elim::Big(e) => (e.rows_seen(), e.pivots().len(), e.fill()),
        }
    }
}

/// Size statistics of a presentation, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationStats {
    pub generators: usize,
    pub relators: usize,
    pub pivots: usize,
    pub pivot_fill: usize,
    pub residual_generators: usize,
    pub residual_relations: usize,
    pub big_integers: bool,
}

#[derive(Clone, Debug)]
pub struct FPAbGroup {
    num_gens: usize,
    elim: Elim,
    /// Non-pivot generators, ascending.
    free_cols: Vec<usize>,
    free_pos: Vec<usize>,
    residual: Dense,
    snf: Snf,
    /// SNF indices of torsion coordinates, then free coordinates.
    coord_index: Vec<usize>,
    coord_order: Vec<BigInt>,
}

#[cfg(test)]
struct MatrixSource<'a>(&'a IntMatrix);

impl FPAbGroup {
    /// Group with the given relator matrix (rows are relators).
    pub fn from_relations(num_gens: usize, rel: &IntMatrix) -> Result<Self> {
        if rel.ncols() != num_gens {
            return Err(Error::DimensionMismatch { expected: num_gens, got: rel.ncols() });
        }
        let mut e: Eliminator<BigInt> = Eliminator::new(num_gens);
        let mut s = Scratch::new(num_gens);
        for r in rel.rows() {
            e.add_row(&mut s, r).expect("BigInt elimination cannot overflow");
        }
        Ok(Self::finish(num_gens, Elim::Big(e)))
    }

    pub fn from_i64(num_gens: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = IntMatrix::new(num_gens);
        for r in rows {
            m.push_dense(&r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())?;
        }
        Self::from_relations(num_gens, &m)
    }

    pub fn free(n: usize) -> Self {
        Self::from_relations(n, &IntMatrix::new(n)).unwrap()
    }

    /// `Z/d_1 + ... ` with `d = 0` meaning a free summand.
    pub fn cyclic_sum(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::new(n);
        for (i, d) in orders.iter().enumerate() {
            if !d.is_zero() {
                m.push_sparse(vec![(i, d.clone())]).unwrap();
            }
        }
        Self::from_relations(n, &m).unwrap()
    }

    /// Streams relators with machine integers, restarting with big integers
    /// if any intermediate coefficient would overflow.
    pub fn from_source(src: &dyn RelatorSource) -> Self {
        let n = src.num_gens();
        let mut e: Eliminator<i64> = Eliminator::new(n);
        let mut s = Scratch::new(n);
        let mut overflow = false;
        src.for_each_relator(&mut |row| {
            if !overflow && e.add_row(&mut s, row).is_err() {
                overflow = true;
            }
        });
        if !overflow {
            return Self::finish(n, Elim::Small(e));
        }
        let mut e: Eliminator<BigInt> = Eliminator::new(n);
        let mut s = Scratch::new(n);
        src.for_each_relator(&mut |row| {
            let big: Vec<(usize, BigInt)> = row.iter().map(|(j, a)| (*j, BigInt::from(*a))).collect();
            e.add_row(&mut s, &big).unwrap();
        });
        Self::finish(n, Elim::Big(e))
    }

    fn finish(num_gens: usize, elim: Elim) -> Self {
        let free_cols: Vec<usize> = (0..num_gens).filter(|&j| !elim.is_pivot(j)).collect();
        let mut free_pos = vec![usize::MAX; num_gens];
        for (k, &j) in free_cols.iter().enumerate() {
            free_pos[j] = k;
        }
        let nf = free_cols.len();
        let mut lat = Lattice::new(nf);
        for h in elim.final_hard_rows() {
            let mut v = vec![BigInt::zero(); nf];
            for (j, a) in h {
                v[free_pos[j]] = a;
            }
            lat.insert(&v);
        }
        let residual = lat.basis();
        let snf = snf::smith_normal_form_dense(&residual, residual.len(), nf);
        let mut coord_index = Vec::new();
        let mut coord_order = Vec::new();
        for i in 0..snf.rank {
            if !snf.diag[i].is_one() {
                coord_index.push(i);
                coord_order.push(snf.diag[i].clone());
            }
        }
        for i in snf.rank..nf {
            coord_index.push(i);
            coord_order.push(BigInt::zero());
        }
        FPAbGroup { num_gens, elim, free_cols, free_pos, residual, snf, coord_index, coord_order }
    }

    pub fn num_gens(&self) -> usize {
        self.num_gens
    }

    pub fn invariant_factors(&self) -> InvariantFactors {
        InvariantFactors {
            free: self.coord_order.iter().filter(|d| d.is_zero()).count(),
            torsion: self.coord_order.iter().filter(|d| !d.is_zero()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coord_order.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.invariant_factors().order()
    }

    /// Number of SNF coordinates.
    pub fn ncoords(&self) -> usize {
        self.coord_order.len()
    }

    /// Order of each coordinate; `0` marks a free coordinate.
    pub fn coord_orders(&self) -> &[BigInt] {
        &self.coord_order
    }

    pub fn stats(&self) -> PresentationStats {
        let (relators, pivots, fill) = self.elim.stats();
        PresentationStats {
            generators: self.num_gens,
            relators,
            pivots,
            pivot_fill: fill,
            residual_generators: self.free_cols.len(),
            residual_relations: self.residual.len(),
            big_integers: matches!(self.elim, Elim::Big(_)),
        }
    }

    /// Canonical SNF coordinates of a sparse generator vector.
    pub fn coords_sparse(&self, v: &[(usize, BigInt)]) -> Result<Vec<BigInt>> {
        if let Some((j, _)) = v.iter().find(|(j, _)| *j >= self.num_gens) {
            return Err(Error::DimensionMismatch { expected: self.num_gens, got: j + 1 });
        }
        let r = self.elim.reduce_vector(v);
        let nf = self.free_cols.len();
        let mut x = vec![BigInt::zero(); nf];
        for (j, a) in r {
            x[self.free_pos[j]] = a;
        }
        let w = matrix::vec_mul(&x, &self.snf.v, nf);
        Ok(self.canonical(self.coord_index.iter().map(|&i| w[i].clone()).collect()))
    }

    pub fn coords(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.num_gens {
            return Err(Error::DimensionMismatch { expected: self.num_gens, got: v.len() });
        }
        let sparse: Vec<(usize, BigInt)> =
            v.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(j, a)| (j, a.clone())).collect();
        self.coords_sparse(&sparse)
    }

    pub fn coords_of_gen(&self, g: usize) -> Result<Vec<BigInt>> {
        self.coords_sparse(&[(g, BigInt::one())])
    }

    /// Reduces a coordinate vector into canonical range.
    pub fn canonical(&self, mut c: Vec<BigInt>) -> Vec<BigInt> {
        for (x, d) in c.iter_mut().zip(&self.coord_order) {
            if !d.is_zero() {
                *x = x.mod_floor(d);
            }
        }
        c
    }

    pub fn coords_is_zero(&self, c: &[BigInt]) -> bool {
        c.iter().zip(&self.coord_order).all(|(x, d)| if d.is_zero() { x.is_zero() } else { x.is_multiple_of(d) })
    }

    pub fn element_is_zero(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.coords(v)?.iter().all(|x| x.is_zero()))
    }

    pub fn sparse_is_zero(&self, v: &[(usize, BigInt)]) -> Result<bool> {
        Ok(self.coords_sparse(v)?.iter().all(|x| x.is_zero()))
    }

    /// Generator vector representing the `i`-th coordinate basis element.
    pub fn section(&self, i: usize) -> Vec<(usize, BigInt)> {
        let row = &self.snf.vinv[self.coord_index[i]];
        row.iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| (self.free_cols[k], a.clone()))
            .collect()
    }

    /// Generator vectors spanning the relation lattice: pivot rows and
    /// reduced hard rows.
    pub fn relation_generators(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = self.elim.pivot_rows();
        out.extend(self.elim.final_hard_rows());
        out
    }
}

#[cfg(test)]
impl RelatorSource for MatrixSource<'_> {
    fn num_gens(&self) -> usize {
        self.0.ncols()
    }

    fn for_each_relator(&self, f: &mut dyn FnMut(&[(usize, i64)])) {
        for r in self.0.rows() {
            let small: Vec<(usize, i64)> = r.iter().map(|(j, a)| (*j, i64::try_from(a).unwrap())).collect();
            f(&small);
        }
    }
}

/// Smith normal form of a relator matrix, as a standalone computation.
pub fn invariant_factors_of(rel: &IntMatrix) -> InvariantFactors {
    FPAbGroup::from_relations(rel.ncols(), rel).unwrap().invariant_factors()
}
