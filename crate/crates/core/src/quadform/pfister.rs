use std::fmt;

use super::{split_args, split_call, QuadForm};
use crate::error::{Error, Result};
use crate::fields::{square_class, FieldDesc, FieldElem, SquareClass};

/// `<<a_1, ..., a_n>> = <1,-a_1> x ... x <1,-a_n>`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PfisterForm {
    field: FieldDesc,
    slots: Vec<FieldElem>,
}

impl PfisterForm {
    pub fn new(field: &FieldDesc, slots: Vec<FieldElem>) -> Result<Self> {
        for a in &slots {
            field.require_same(a.field())?;
            if a.is_zero() {
                return Err(Error::ZeroElement);
            }
        }
        Ok(PfisterForm { field: field.clone(), slots })
    }

    pub fn from_i64(field: &FieldDesc, slots: &[i64]) -> Result<Self> {
        Self::new(field, slots.iter().map(|&a| field.from_i64(a)).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (head, body, field, off) = split_call(s)?;
        if head != "pfister" {
            return Err(Error::Parse { pos: 0, expected: "pfister(...)".into() });
        }
        let slots = split_args(body, off)?
            .iter()
            .map(|(o, a)| field.parse_elem_at(a, *o))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&field, slots)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn fold(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[FieldElem] {
        &self.slots
    }

    pub fn classes(&self) -> Vec<SquareClass> {
        self.slots.iter().map(|a| square_class(a).unwrap()).collect()
    }

    pub fn expand(&self) -> QuadForm {
        let mut q = QuadForm::from_i64(&self.field, &[1]).unwrap();
        for a in &self.slots {
            let b = QuadForm::new(&self.field, vec![self.field.one(), a.neg()]).unwrap();
            q = q.tensor(&b).unwrap();
        }
        q
    }

    /// `q'` with `q = <1> + q'`.
    pub fn pure_subform(&self) -> QuadForm {
        let q = self.expand();
        QuadForm::new(&self.field, q.entries()[1..].to_vec()).unwrap()
    }
}

impl fmt::Display for PfisterForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slots.iter().map(|a| a.to_string()).collect();
        write!(f, "pfister({})@{}", parts.join(","), self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_examples() {
        let f7 = FieldDesc::prime(7).unwrap();
        let p = PfisterForm::from_i64(&f7, &[3]).unwrap();
        assert_eq!(p.expand(), QuadForm::from_i64(&f7, &[1, -3]).unwrap());
        assert_eq!(p.pure_subform(), QuadForm::from_i64(&f7, &[-3]).unwrap());
        let p = PfisterForm::from_i64(&f7, &[3, 3]).unwrap();
        assert_eq!(p.expand(), QuadForm::from_i64(&f7, &[1, 4, 4, 2]).unwrap());
        assert_eq!(p.expand().witt_decompose().unwrap().witt_index, 2);
        let q = FieldDesc::rationals();
        let p = PfisterForm::from_i64(&q, &[1, 5]).unwrap();
        assert_eq!(p.expand().witt_decompose().unwrap().anisotropic_rank, 0);
        assert_eq!(PfisterForm::from_i64(&q, &[0]), Err(Error::ZeroElement));
    }

    #[test]
    fn pure_subform_completes() {
        let q = FieldDesc::rationals();
        let p = PfisterForm::from_i64(&q, &[-1, -1, 3]).unwrap();
        let one = QuadForm::from_i64(&q, &[1]).unwrap();
        assert!(one.orth_sum(&p.pure_subform()).unwrap().is_isometric(&p.expand()).unwrap());
        assert!(p.expand().represents(&q.one()).unwrap());
        assert_eq!(PfisterForm::parse(&p.to_string()).unwrap(), p);
    }
}
