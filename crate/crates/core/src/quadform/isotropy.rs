//! Isotropy and Witt index.
//!
//! Over `Q` and `F_p(t)` a form is tracked through its local invariants
//! (rank, determinant, Hasse invariant at each relevant place, signature),
//! which is enough to peel off hyperbolic planes without producing an
//! explicit isotropic vector: if `q = H + q'` then `det q' = -det q` and
//! `hasse_v(q') = hasse_v(q) (-1, -det q)_v`.

use serde::Serialize;

use super::QuadForm;
use crate::error::{Error, Result};
use crate::fields::hilbert::{hilbert_symbol, is_local_square};
use crate::fields::place::support_places;
use crate::fields::{is_square, FieldElem, Place};
use crate::wittring::WittClass;

#[derive(Clone, Debug, Serialize)]
pub struct WittDecomposition {
    pub witt_index: usize,
    pub anisotropic_rank: usize,
    pub witt_class: WittClass,
}

#[derive(Clone, Debug)]
pub struct LocalInvariants {
    rank: usize,
    det: FieldElem,
    /// Hasse invariant `prod_{i<j} (a_i, a_j)_v` at every place where it or
    /// the determinant can be nontrivial.
    hasse: Vec<(Place, i8)>,
    /// Signature over `Q`.
    sig: Option<i64>,
}

impl LocalInvariants {
    pub fn of(q: &QuadForm) -> Result<Self> {
        let f = q.field();
        let mut places = Vec::new();
        if f.is_rationals() || f.is_ratfun() {
            places = support_places(q.entries())?;
            if f.is_rationals() && !places.contains(&Place::Two) {
                places.push(Place::Two);
                places.sort();
            }
        }
        let mut hasse = Vec::with_capacity(places.len());
        for v in places {
            let mut eps = 1i8;
            let mut d = f.one();
            for a in q.entries() {
                eps *= hilbert_symbol(&d, a, &v)?;
                d = d.mul(a);
            }
            hasse.push((v, eps));
        }
        let sig = f.is_rationals().then(|| q.entries().iter().map(|a| a.sign().unwrap() as i64).sum());
        Ok(LocalInvariants { rank: q.rank(), det: q.det(), hasse, sig })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn hasse(&self) -> &[(Place, i8)] {
        &self.hasse
    }

    fn locally_isotropic(&self, v: &Place, eps: i8) -> Result<bool> {
        let f = self.det.field();
        let m1 = f.from_i64(-1);
        Ok(match self.rank {
            0 | 1 => false,
            2 => is_local_square(&self.det.neg(), v)?,
            3 => hilbert_symbol(&m1, &self.det.neg(), v)? == eps,
            4 => !is_local_square(&self.det, v)? || eps == hilbert_symbol(&m1, &m1, v)?,
            _ => true,
        })
    }

    pub fn is_isotropic(&self) -> Result<bool> {
        match self.rank {
            0 | 1 => return Ok(false),
            2 => return is_square(&self.det.neg()),
            _ => {}
        }
        if self.det.field().is_finite() {
            return Ok(true);
        }
        if let Some(s) = self.sig {
            if s.unsigned_abs() as usize >= self.rank {
                return Ok(false);
            }
        }
        for (v, eps) in &self.hasse {
            if !self.locally_isotropic(v, *eps)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Invariants of `q'` where `q = H + q'`; `q` must be isotropic.
    pub fn split_hyperbolic(&self) -> Result<Self> {
        let m1 = self.det.field().from_i64(-1);
        let nd = self.det.neg();
        let mut hasse = Vec::with_capacity(self.hasse.len());
        for (v, eps) in &self.hasse {
            hasse.push((v.clone(), eps * hilbert_symbol(&m1, &nd, v)?));
        }
        Ok(LocalInvariants { rank: self.rank - 2, det: nd, hasse, sig: self.sig })
    }
}

pub(super) fn is_isotropic(q: &QuadForm) -> Result<bool> {
    LocalInvariants::of(q)?.is_isotropic()
}

pub(super) fn witt_decompose(q: &QuadForm) -> Result<WittDecomposition> {
    let mut inv = LocalInvariants::of(q)?;
    let mut idx = 0;
    while inv.is_isotropic()? {
        inv = inv.split_hyperbolic()?;
        idx += 1;
    }
    Ok(WittDecomposition { witt_index: idx, anisotropic_rank: inv.rank, witt_class: q.witt_class()? })
}

/// Whether `<a_k, ..., a_n>` takes the value `c` on some vector, nonzero if
/// `nonzero` is set (finite fields).
fn can_finish(rest: &[FieldElem], c: &FieldElem, nonzero: bool) -> Result<bool> {
    let r = rest.len();
    if !c.is_zero() {
        return Ok(r >= 2 || (r == 1 && is_square(&c.div(&rest[0])?)?));
    }
    if !nonzero {
        return Ok(true);
    }
    Ok(r >= 3 || (r == 2 && is_square(&rest[0].mul(&rest[1]).neg())?))
}

/// Lexicographically least vector (in element code order) with `q(v) = c`;
/// for `c = 0` with `nonzero`, the least nonzero such vector.
pub(super) fn least_vector(q: &QuadForm, c: &FieldElem, nonzero: bool) -> Result<Option<Vec<FieldElem>>> {
    let f = q.field();
    if !f.is_finite() {
        return Err(Error::UnsupportedField(format!("no witness search over {f}")));
    }
    let a = q.entries();
    if !can_finish(a, c, nonzero)? {
        return Ok(None);
    }
    let elems = f.elements()?;
    let mut target = c.clone();
    let mut nz = nonzero;
    let mut out = Vec::with_capacity(a.len());
    for k in 0..a.len() {
        for x in &elems {
            let t = target.sub(&a[k].mul(&x.square()));
            let nz2 = nz && x.is_zero();
            if can_finish(&a[k + 1..], &t, nz2)? {
                out.push(x.clone());
                target = t;
                nz = nz2;
                break;
            }
        }
    }
    Ok(Some(out))
}
