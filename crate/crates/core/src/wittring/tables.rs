//! `I^n(F)` and `I^n(F)/I^{n+1}(F)` over a finite field as finitely presented
//! groups, in the regular presentation: one generator per element, with
//! `g_x + g_y = g_{x+y}` and `g_0 = 0`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::WittClass;
use crate::error::{Error, Result};
use crate::fields::FieldDesc;
use crate::fpgroup::FPAbGroup;
use crate::quadform::QuadForm;

#[derive(Clone, Debug)]
pub struct ClassGroup {
    field: FieldDesc,
    n: i64,
    quotient: bool,
    /// Elements of `I^n`, or one representative per coset of `I^{n+1}`.
    elems: Vec<WittClass>,
    group: Arc<FPAbGroup>,
}

/// All four classes of `W(F)`, zero first.
pub fn witt_elements(f: &FieldDesc) -> Result<Vec<WittClass>> {
    if !f.is_finite() {
        return Err(Error::UnsupportedField(format!("{f} is not finite")));
    }
    let mut out = Vec::new();
    for c in f.square_class_reps()? {
        let d = c.rep().clone();
        out.push(QuadForm::new(f, vec![f.one(), d.neg()])?.witt_class()?);
        out.push(QuadForm::new(f, vec![d])?.witt_class()?);
    }
    out.sort_by_key(|w| !w.is_zero());
    Ok(out)
}

pub fn ideal_group(f: &FieldDesc, n: i64) -> Result<ClassGroup> {
    let mut elems = Vec::new();
    for w in witt_elements(f)? {
        if w.in_i_n(n)? {
            elems.push(w);
        }
    }
    ClassGroup::build(f, n, false, elems)
}

pub fn iota_group(f: &FieldDesc, n: i64) -> Result<ClassGroup> {
    let mut reps: Vec<WittClass> = Vec::new();
    for w in witt_elements(f)? {
        if !w.in_i_n(n)? {
            continue;
        }
        let mut fresh = true;
        for r in &reps {
            if w.sub(r)?.in_i_n(n + 1)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(w);
        }
    }
    ClassGroup::build(f, n, true, reps)
}

impl ClassGroup {
    fn build(f: &FieldDesc, n: i64, quotient: bool, elems: Vec<WittClass>) -> Result<Self> {
        let mut g = ClassGroup { field: f.clone(), n, quotient, elems, group: Arc::new(FPAbGroup::free(0)) };
        let k = g.elems.len();
        let mut rows = Vec::new();
        for i in 0..k {
            for j in i..k {
                let s = g.index_of(&g.elems[i].add(&g.elems[j])?)?;
                let mut r = vec![0i64; k];
                r[i] += 1;
                r[j] += 1;
                r[s] -= 1;
                rows.push(r);
            }
        }
        let z = g.index_of(&WittClass::zero(f)?)?;
        let mut r = vec![0i64; k];
        r[z] = 1;
        rows.push(r);
        g.group = Arc::new(FPAbGroup::from_i64(k, &rows)?);
        Ok(g)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn degree(&self) -> i64 {
        self.n
    }

    pub fn is_quotient(&self) -> bool {
        self.quotient
    }

    pub fn elements(&self) -> &[WittClass] {
        &self.elems
    }

    pub fn group(&self) -> &Arc<FPAbGroup> {
        &self.group
    }

    /// Generator index of the element (or coset) holding `w`.
    pub fn index_of(&self, w: &WittClass) -> Result<usize> {
        if !w.in_i_n(self.n)? {
            return Err(Error::NotInPower(self.n));
        }
        for (i, e) in self.elems.iter().enumerate() {
            let same = if self.quotient { w.sub(e)?.in_i_n(self.n + 1)? } else { w == e };
            if same {
                return Ok(i);
            }
        }
        Err(Error::NotInPower(self.n))
    }

    pub fn coords(&self, w: &WittClass) -> Result<Vec<BigInt>> {
        self.group.coords_of_gen(self.index_of(w)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::InvariantFactors;

    #[test]
    fn ideal_and_quotient_groups() {
        for (p, w) in [(7, InvariantFactors::new(0, &[4])), (5, InvariantFactors::new(0, &[2, 2]))] {
            let f = FieldDesc::prime(p).unwrap();
            assert_eq!(ideal_group(&f, 0).unwrap().group().invariant_factors(), w);
            assert_eq!(ideal_group(&f, -1).unwrap().group().invariant_factors(), w);
            assert_eq!(ideal_group(&f, 1).unwrap().group().invariant_factors(), InvariantFactors::new(0, &[2]));
            assert!(ideal_group(&f, 2).unwrap().group().is_trivial());
            assert_eq!(iota_group(&f, 0).unwrap().group().invariant_factors(), InvariantFactors::new(0, &[2]));
            assert_eq!(iota_group(&f, 1).unwrap().group().invariant_factors(), InvariantFactors::new(0, &[2]));
            assert!(iota_group(&f, 2).unwrap().group().is_trivial());
            assert!(iota_group(&f, -1).unwrap().group().is_trivial());
        }
    }
}
