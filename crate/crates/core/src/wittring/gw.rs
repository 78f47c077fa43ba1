use serde::Serialize;

use super::WittClass;
use crate::error::{Error, Result};
use crate::quadform::QuadForm;

/// Element of `GW` as a parity-compatible pair (rank, Witt class).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct GWClass {
    rank: i64,
    witt: WittClass,
}

/// Virtual ranks are allowed; only the parity is constrained.
pub fn gw_from_pullback(rank: i64, witt: &WittClass) -> Result<GWClass> {
    if rank.rem_euclid(2) as u8 != witt.e0()? {
        return Err(Error::ParityMismatch);
    }
    Ok(GWClass { rank, witt: witt.clone() })
}

impl GWClass {
    pub fn of_form(q: &QuadForm) -> Result<Self> {
        Ok(GWClass { rank: q.rank() as i64, witt: q.witt_class()? })
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn witt(&self) -> &WittClass {
        &self.witt
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.witt.is_zero()
    }

    pub fn add(&self, o: &GWClass) -> Result<GWClass> {
        Ok(GWClass { rank: self.rank + o.rank, witt: self.witt.add(&o.witt)? })
    }

    pub fn neg(&self) -> GWClass {
        GWClass { rank: -self.rank, witt: self.witt.neg() }
    }

    pub fn mul(&self, o: &GWClass) -> Result<GWClass> {
        Ok(GWClass { rank: self.rank * o.rank, witt: self.witt.mul(&o.witt)? })
    }
}

/// Element of `I^n / I^{n+1}`.
#[derive(Clone, Debug, Serialize)]
pub struct IotaClass {
    n: i64,
    rep: WittClass,
}

pub fn iota_class(w: &WittClass, n: i64) -> Result<IotaClass> {
    if !w.in_i_n(n)? {
        return Err(Error::NotInPower(n));
    }
    Ok(IotaClass { n, rep: w.clone() })
}

pub fn iota_equal(x: &IotaClass, y: &IotaClass) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::MixedDegree(x.n, y.n));
    }
    x.rep.sub(&y.rep)?.in_i_n(x.n + 1)
}

impl IotaClass {
    pub fn degree(&self) -> i64 {
        self.n
    }

    pub fn rep(&self) -> &WittClass {
        &self.rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldDesc;
    use crate::quadform::PfisterForm;

    #[test]
    fn pullback_parity() {
        let f7 = FieldDesc::prime(7).unwrap();
        let w = WittClass::of_entries(&f7, &[1, 1]).unwrap();
        assert!(gw_from_pullback(2, &w).is_ok());
        assert_eq!(gw_from_pullback(1, &w), Err(Error::ParityMismatch));
    }

    #[test]
    fn iota_examples() {
        let f7 = FieldDesc::prime(7).unwrap();
        let pf = |f: &FieldDesc, a: &[i64]| WittClass::pfister(&PfisterForm::from_i64(f, a).unwrap()).unwrap();
        let x = iota_class(&pf(&f7, &[3]), 1).unwrap();
        let y = iota_class(&pf(&f7, &[5]), 1).unwrap();
        assert!(iota_equal(&x, &y).unwrap());
        let z = WittClass::zero(&f7).unwrap();
        assert!(iota_equal(&iota_class(&z, 1).unwrap(), &iota_class(&z, 1).unwrap()).unwrap());
        let q = FieldDesc::rationals();
        let a = iota_class(&pf(&q, &[2]), 1).unwrap();
        let b = iota_class(&WittClass::zero(&q).unwrap(), 1).unwrap();
        assert!(!iota_equal(&a, &b).unwrap());
        assert_eq!(iota_class(&WittClass::of_entries(&q, &[1]).unwrap(), 1).unwrap_err(), Error::NotInPower(1));
    }
}
