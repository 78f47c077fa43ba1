//! Streaming sparse elimination of relator rows.
//!
//! Each incoming row is fully reduced against the current pivot rows. If the
//! result has a `+-1` entry, the highest such column becomes a new pivot;
//! otherwise the row is kept as a hard row. Pivot `k` is reduced against
//! pivots `0..k`, so substituting pivots in creation order touches each at
//! most once.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Coeff: Clone + Debug + PartialEq + Eq + std::hash::Hash + Send + Sync + 'static {
    fn nil() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_nil(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_minus_one(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `self + a * b`
    fn mul_add(&self, a: &Self, b: &Self) -> Option<Self>;
}

impl Coeff for i64 {
    fn nil() -> Self {
        0
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64().filter(|x| x.unsigned_abs() < 1 << 62)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn is_minus_one(&self) -> bool {
        *self == -1
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul_add(&self, a: &Self, b: &Self) -> Option<Self> {
        self.checked_add(a.checked_mul(*b)?)
    }
}

impl Coeff for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_minus_one(&self) -> bool {
        self.is_negative() && self.magnitude().is_one()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul_add(&self, a: &Self, b: &Self) -> Option<Self> {
        Some(self + a * b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

#[derive(Clone, Debug)]
pub struct PivotRow<C> {
    pub col: usize,
    /// Sorted by column; the entry at `col` is `1`.
    pub row: Vec<(usize, C)>,
}

/// Dense scratch row that remembers which columns it has touched.
pub struct Scratch<C> {
    vals: Vec<C>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl<C: Coeff> Scratch<C> {
    pub fn new(n: usize) -> Self {
        Scratch { vals: vec![C::nil(); n], touched: Vec::new(), mark: vec![false; n] }
    }

    fn touch(&mut self, j: usize) -> bool {
        if self.mark[j] {
            return false;
        }
        self.mark[j] = true;
        self.touched.push(j);
        true
    }

    /// Drains the nonzero entries, sorted by column, and resets the scratch.
    fn take(&mut self) -> Vec<(usize, C)> {
        let mut out = Vec::new();
        for &j in &self.touched {
            self.mark[j] = false;
            let v = std::mem::replace(&mut self.vals[j], C::nil());
            if !v.is_nil() {
                out.push((j, v));
            }
        }
        self.touched.clear();
        out.sort_by_key(|e| e.0);
        out
    }

    fn clear(&mut self) {
        for &j in &self.touched {
            self.mark[j] = false;
            self.vals[j] = C::nil();
        }
        self.touched.clear();
    }
}

#[derive(Clone, Debug)]
pub struct Eliminator<C> {
    ncols: usize,
    pivots: Vec<PivotRow<C>>,
    pivot_of: Vec<u32>,
    hard: Vec<Vec<(usize, C)>>,
    hard_seen: HashSet<Vec<(usize, C)>>,
    rows_seen: usize,
}

const NO_PIVOT: u32 = u32::MAX;

impl<C: Coeff> Eliminator<C> {
    pub fn new(ncols: usize) -> Self {
        Eliminator {
            ncols,
            pivots: Vec::new(),
            pivot_of: vec![NO_PIVOT; ncols],
            hard: Vec::new(),
            hard_seen: HashSet::new(),
            rows_seen: 0,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[PivotRow<C>] {
        &self.pivots
    }

    pub fn hard_rows(&self) -> &[Vec<(usize, C)>] {
        &self.hard
    }

    pub fn rows_seen(&self) -> usize {
        self.rows_seen
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col] != NO_PIVOT
    }

    /// Reduces the scratch contents against all pivots in place.
    fn reduce(&self, s: &mut Scratch<C>) -> Result<(), Overflow> {
        let mut heap: BinaryHeap<Reverse<u32>> = s
            .touched
            .iter()
            .filter(|&&j| self.pivot_of[j] != NO_PIVOT)
            .map(|&j| Reverse(self.pivot_of[j]))
            .collect();
        while let Some(Reverse(k)) = heap.pop() {
            let p = &self.pivots[k as usize];
            let c = s.vals[p.col].clone();
            if c.is_nil() {
                continue;
            }
            let m = c.neg().ok_or(Overflow)?;
            for (j, a) in &p.row {
                let j = *j;
                let fresh = s.touch(j);
                let was_zero = fresh || s.vals[j].is_nil();
                s.vals[j] = s.vals[j].mul_add(&m, a).ok_or(Overflow)?;
                if was_zero && j != p.col && self.pivot_of[j] != NO_PIVOT && !s.vals[j].is_nil() {
                    heap.push(Reverse(self.pivot_of[j]));
                }
            }
        }
        Ok(())
    }

    /// Feeds one relator row (unsorted, duplicates allowed).
    pub fn add_row(&mut self, s: &mut Scratch<C>, row: &[(usize, C)]) -> Result<(), Overflow> {
        self.rows_seen += 1;
        for (j, a) in row {
            s.touch(*j);
            s.vals[*j] = s.vals[*j].mul_add(a, &one::<C>()).ok_or(Overflow)?;
        }
        if let Err(e) = self.reduce(s) {
            s.clear();
            return Err(e);
        }
        let mut r = s.take();
        if r.is_empty() {
            return Ok(());
        }
        match r.iter().rposition(|(_, a)| a.is_one() || a.is_minus_one()) {
            Some(k) => {
                if r[k].1.is_minus_one() {
                    for e in r.iter_mut() {
                        e.1 = e.1.neg().ok_or(Overflow)?;
                    }
                }
                let col = r[k].0;
                self.pivot_of[col] = self.pivots.len() as u32;
                self.pivots.push(PivotRow { col, row: r });
            }
            None => {
                if r[0].1.to_big().is_negative() {
                    for e in r.iter_mut() {
                        e.1 = e.1.neg().ok_or(Overflow)?;
                    }
                }
                if self.hard_seen.insert(r.clone()) {
                    self.hard.push(r);
                }
            }
        }
        Ok(())
    }

    /// Fully reduces a query vector; only non-pivot columns remain.
    pub fn reduce_vector(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut vals: std::collections::BTreeMap<usize, BigInt> = Default::default();
        for (j, a) in v {
            *vals.entry(*j).or_insert_with(BigInt::zero) += a;
        }
        let mut heap: BinaryHeap<Reverse<u32>> = vals
            .iter()
            .filter(|(j, a)| self.pivot_of[**j] != NO_PIVOT && !a.is_zero())
            .map(|(j, _)| Reverse(self.pivot_of[*j]))
            .collect();
        while let Some(Reverse(k)) = heap.pop() {
            let p = &self.pivots[k as usize];
            let c = match vals.get(&p.col) {
                Some(c) if !c.is_zero() => c.clone(),
                _ => continue,
            };
            for (j, a) in &p.row {
                let e = vals.entry(*j).or_insert_with(BigInt::zero);
                let was_zero = e.is_zero();
                *e -= &c * a.to_big();
                if was_zero && *j != p.col && self.pivot_of[*j] != NO_PIVOT && !e.is_zero() {
                    heap.push(Reverse(self.pivot_of[*j]));
                }
            }
        }
        vals.into_iter().filter(|(_, a)| !a.is_zero()).collect()
    }

    /// Hard rows re-reduced against the final pivot set.
    pub fn final_hard_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for h in &self.hard {
            let big: Vec<(usize, BigInt)> = h.iter().map(|(j, a)| (*j, a.to_big())).collect();
            let r = self.reduce_vector(&big);
            if !r.is_empty() && seen.insert(r.clone()) {
                out.push(r);
            }
        }
        out
    }

    pub fn to_big(&self) -> Eliminator<BigInt> {
        let conv = |r: &Vec<(usize, C)>| r.iter().map(|(j, a)| (*j, a.to_big())).collect::<Vec<_>>();
        Eliminator {
            ncols: self.ncols,
            pivots: self.pivots.iter().map(|p| PivotRow { col: p.col, row: conv(&p.row) }).collect(),
            pivot_of: self.pivot_of.clone(),
            hard: self.hard.iter().map(conv).collect(),
            hard_seen: self.hard.iter().map(conv).collect(),
            rows_seen: self.rows_seen,
        }
    }

    pub fn fill(&self) -> usize {
        self.pivots.iter().map(|p| p.row.len()).sum()
    }
}

fn one<C: Coeff>() -> C {
    C::from_big(&BigInt::one()).unwrap()
}
