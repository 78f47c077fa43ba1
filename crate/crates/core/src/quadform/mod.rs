//! Diagonal quadratic forms `<a_1, ..., a_n>` with unit entries.

mod decompose;
mod gram;
mod isotropy;
mod pfister;

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{square_class, FieldDesc, FieldElem, SquareClass};
use crate::wittring::WittClass;

pub use decompose::{decompose_value, DEFAULT_HEIGHT_BOUND};
pub use gram::GramMatrix;
pub use isotropy::{LocalInvariants, WittDecomposition};
pub use pfister::PfisterForm;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadForm {
    field: FieldDesc,
    entries: Vec<FieldElem>,
}

impl QuadForm {
    pub fn new(field: &FieldDesc, entries: Vec<FieldElem>) -> Result<Self> {
        for a in &entries {
            field.require_same(a.field())?;
            if a.is_zero() {
                return Err(Error::ZeroElement);
            }
        }
        Ok(QuadForm { field: field.clone(), entries })
    }

    pub fn from_i64(field: &FieldDesc, entries: &[i64]) -> Result<Self> {
        Self::new(field, entries.iter().map(|&a| field.from_i64(a)).collect())
    }

    pub fn empty(field: &FieldDesc) -> Self {
        QuadForm { field: field.clone(), entries: Vec::new() }
    }

    /// `k` copies of `<1,-1>`.
    pub fn hyperbolic(field: &FieldDesc, k: usize) -> Self {
        let mut entries = Vec::with_capacity(2 * k);
        for _ in 0..k {
            entries.push(field.one());
            entries.push(field.from_i64(-1));
        }
        QuadForm { field: field.clone(), entries }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn det(&self) -> FieldElem {
        self.entries.iter().fold(self.field.one(), |acc, a| acc.mul(a))
    }

    /// `(-1)^(n(n-1)/2) det`, trivial on hyperbolic forms.
    pub fn signed_det(&self) -> FieldElem {
        let n = self.rank();
        let d = self.det();
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            d.neg()
        } else {
            d
        }
    }

    pub fn signed_disc(&self) -> Result<SquareClass> {
        square_class(&self.signed_det())
    }

    fn check_vec(&self, v: &[FieldElem]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: v.len() });
        }
        for x in v {
            self.field.require_same(x.field())?;
        }
        Ok(())
    }

    /// `q(v) = sum a_i v_i^2`.
    pub fn eval(&self, v: &[FieldElem]) -> Result<FieldElem> {
        self.check_vec(v)?;
        Ok(self.entries.iter().zip(v).fold(self.field.zero(), |acc, (a, x)| acc.add(&a.mul(&x.square()))))
    }

    /// Polar form `b(v, w) = q(v + w) - q(v) - q(w)`.
    pub fn polar(&self, v: &[FieldElem], w: &[FieldElem]) -> Result<FieldElem> {
        self.check_vec(v)?;
        self.check_vec(w)?;
        let s = self.entries.iter().zip(v.iter().zip(w)).fold(self.field.zero(), |acc, (a, (x, y))| {
            acc.add(&a.mul(&x.mul(y)))
        });
        Ok(s.add(&s))
    }

    pub fn orth_sum(&self, o: &QuadForm) -> Result<QuadForm> {
        self.field.require_same(&o.field)?;
        let mut entries = self.entries.clone();
        entries.extend(o.entries.iter().cloned());
        Ok(QuadForm { field: self.field.clone(), entries })
    }

    /// Entries `a_i b_j` in row-major order.
    pub fn tensor(&self, o: &QuadForm) -> Result<QuadForm> {
        self.field.require_same(&o.field)?;
        let entries = self.entries.iter().flat_map(|a| o.entries.iter().map(move |b| a.mul(b))).collect();
        Ok(QuadForm { field: self.field.clone(), entries })
    }

    pub fn scale(&self, c: &FieldElem) -> Result<QuadForm> {
        self.field.require_same(c.field())?;
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(QuadForm { field: self.field.clone(), entries: self.entries.iter().map(|a| a.mul(c)).collect() })
    }

    pub fn neg(&self) -> QuadForm {
        QuadForm { field: self.field.clone(), entries: self.entries.iter().map(|a| a.neg()).collect() }
    }

    pub fn gram(&self) -> GramMatrix {
        GramMatrix::diagonal(&self.field, &self.entries)
    }

    /// `tau_v(x) = x - (b(v,x) / q(v)) v`.
    pub fn reflect(&self, v: &[FieldElem], x: &[FieldElem]) -> Result<Vec<FieldElem>> {
        self.gram().reflect(v, x)
    }

    pub fn witt_class(&self) -> Result<WittClass> {
        WittClass::of_form(self)
    }

    /// Equal rank and equal Witt class.
    pub fn is_isometric(&self, o: &QuadForm) -> Result<bool> {
        self.field.require_same(&o.field)?;
        Ok(self.rank() == o.rank() && self.witt_class()? == o.witt_class()?)
    }

    pub fn is_isotropic(&self) -> Result<bool> {
        isotropy::is_isotropic(self)
    }

    /// Lexicographically least nonzero zero of `q` (finite fields only).
    pub fn isotropic_vector(&self) -> Result<Option<Vec<FieldElem>>> {
        isotropy::least_vector(self, &self.field.zero(), true)
    }

    pub fn represents(&self, c: &FieldElem) -> Result<bool> {
        self.field.require_same(c.field())?;
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.rank() == 0 {
            return Ok(false);
        }
        self.orth_sum(&QuadForm::new(&self.field, vec![c.neg()])?)?.is_isotropic()
    }

    /// Lexicographically least `v` with `q(v) = c` (finite fields only).
    pub fn representation(&self, c: &FieldElem) -> Result<Option<Vec<FieldElem>>> {
        self.field.require_same(c.field())?;
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        isotropy::least_vector(self, c, false)
    }

    pub fn witt_decompose(&self) -> Result<WittDecomposition> {
        isotropy::witt_decompose(self)
    }

    pub fn parse(s: &str) -> Result<QuadForm> {
        let (head, body, field, off) = split_call(s)?;
        let args = split_args(body, off)?;
        match head {
            "diag" => {
                let entries =
                    args.iter().map(|(o, a)| field.parse_elem_at(a, *o)).collect::<Result<Vec<_>>>()?;
                QuadForm::new(&field, entries)
            }
            "pfister" => {
                let slots = args.iter().map(|(o, a)| field.parse_elem_at(a, *o)).collect::<Result<Vec<_>>>()?;
                Ok(PfisterForm::new(&field, slots)?.expand())
            }
            _ => Err(Error::Parse { pos: 0, expected: "diag(...) or pfister(...)".into() }),
        }
    }

    /// `<a,b,...>` without the field tag.
    pub fn entries_string(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        format!("<{}>", parts.join(","))
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        write!(f, "diag({})@{}", parts.join(","), self.field)
    }
}

/// Splits `head(body)@TAG` into its parts; `off` is the byte offset of `body`.
pub(crate) fn split_call(s: &str) -> Result<(&str, &str, FieldDesc, usize)> {
    let open = s.find('(').ok_or(Error::Parse { pos: 0, expected: "'('".into() })?;
    let mut depth = 0i32;
    let mut close = None;
    for (i, c) in s.char_indices().skip(open) {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let close = close.ok_or(Error::Parse { pos: s.len(), expected: "')'".into() })?;
    let rest = &s[close + 1..];
    let tag = rest.strip_prefix('@').ok_or(Error::Parse { pos: close + 1, expected: "'@FIELD'".into() })?;
    let field = FieldDesc::parse(tag).map_err(|e| match e {
        Error::Parse { pos, expected } => Error::Parse { pos: pos + close + 2, expected },
        e => e,
    })?;
    Ok((s[..open].trim(), &s[open + 1..close], field, open + 1))
}

/// Top-level comma split; yields `(offset, piece)` pairs. Empty input gives
/// no pieces.
pub(crate) fn split_args(s: &str, off: usize) -> Result<Vec<(usize, &str)>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push((off + start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse { pos: off + i, expected: "balanced brackets".into() });
        }
    }
    out.push((off + start, &s[start..]));
    for (o, piece) in &out {
        if piece.trim().is_empty() {
            return Err(Error::Parse { pos: *o, expected: "element".into() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    fn form(f: &FieldDesc, a: &[i64]) -> QuadForm {
        QuadForm::from_i64(f, a).unwrap()
    }

    #[test]
    fn sums_and_products() {
        let q = FieldDesc::rationals();
        assert_eq!(form(&q, &[1]).orth_sum(&form(&q, &[-1])).unwrap(), form(&q, &[1, -1]));
        let f = gf(7);
        assert_eq!(form(&f, &[1, -3]).tensor(&form(&f, &[1, -5])).unwrap(), form(&f, &[1, -5, -3, 1]));
        assert_eq!(QuadForm::empty(&f).orth_sum(&form(&f, &[3])).unwrap(), form(&f, &[3]));
        assert_eq!(form(&f, &[1]).orth_sum(&form(&gf(5), &[1])), Err(Error::FieldMismatch));
    }

    #[test]
    fn reflections() {
        let q = FieldDesc::rationals();
        let v = [q.one(), q.zero()];
        let x = [q.one(), q.one()];
        let r = form(&q, &[1, 1]).reflect(&v, &x).unwrap();
        assert_eq!(r, vec![q.from_i64(-1), q.one()]);
        assert_eq!(form(&q, &[1, 1]).reflect(&x, &x).unwrap(), vec![q.from_i64(-1), q.from_i64(-1)]);
        let f = gf(7);
        let w = [f.one(), f.one()];
        assert_eq!(form(&f, &[1, -1]).reflect(&w, &w), Err(Error::IsotropicVector));
    }

    #[test]
    fn isometry_examples() {
        let f5 = gf(5);
        assert!(form(&f5, &[1, 1]).is_isometric(&form(&f5, &[2, 2])).unwrap());
        let f7 = gf(7);
        assert!(!form(&f7, &[1, 1]).is_isometric(&form(&f7, &[1, 3])).unwrap());
        let q = FieldDesc::rationals();
        let a = form(&q, &[1, 2, -7]);
        assert!(a.is_isometric(&a).unwrap());
    }

    #[test]
    fn isotropy_examples() {
        let f7 = gf(7);
        let h = form(&f7, &[1, -1]);
        assert!(h.is_isotropic().unwrap());
        assert_eq!(h.isotropic_vector().unwrap(), Some(vec![f7.one(), f7.one()]));
        assert!(!form(&f7, &[1, 1]).is_isotropic().unwrap());
        let f5 = gf(5);
        let v = form(&f5, &[1, 1]).isotropic_vector().unwrap().unwrap();
        assert_eq!(v, vec![f5.one(), f5.from_i64(2)]);
        let q = FieldDesc::rationals();
        assert!(form(&q, &[1, -1]).is_isotropic().unwrap());
        assert!(!form(&q, &[1, 1, 1]).is_isotropic().unwrap());
        assert!(form(&q, &[1, 1, -2]).is_isotropic().unwrap());
        // <1,1,1,-7> is anisotropic over Q_2
        assert!(!form(&q, &[1, 1, 1, -7]).is_isotropic().unwrap());
        assert!(form(&q, &[1, 1, 1, -3]).is_isotropic().unwrap());
        assert!(form(&q, &[1, 1, 1, 1, -7]).is_isotropic().unwrap());
    }

    #[test]
    fn representation_examples() {
        let f7 = gf(7);
        let q = form(&f7, &[1, -3]);
        assert!(q.represents(&f7.from_i64(5)).unwrap());
        assert_eq!(q.representation(&f7.from_i64(5)).unwrap(), Some(vec![f7.one(), f7.one()]));
        let qq = FieldDesc::rationals();
        assert!(!form(&qq, &[1]).represents(&qq.from_i64(-1)).unwrap());
        assert!(form(&qq, &[1, 1]).represents(&qq.from_i64(5)).unwrap());
        assert!(!form(&qq, &[1, 1]).represents(&qq.from_i64(3)).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let f7 = gf(7);
        let d = form(&f7, &[1, 1, 1, 1]).witt_decompose().unwrap();
        assert_eq!((d.witt_index, d.anisotropic_rank), (2, 0));
        let d = form(&f7, &[1, 1, 1]).witt_decompose().unwrap();
        assert_eq!((d.witt_index, d.anisotropic_rank), (1, 1));
        let q = FieldDesc::rationals();
        let d = form(&q, &[1, -1]).witt_decompose().unwrap();
        assert_eq!((d.witt_index, d.anisotropic_rank), (1, 0));
        let d = form(&q, &[1, 1, -1, -1, 3]).witt_decompose().unwrap();
        assert_eq!((d.witt_index, d.anisotropic_rank), (2, 1));
        let d = form(&q, &[1, 1, 1, 1, -7, -7, -7, -7]).witt_decompose().unwrap();
        assert_eq!(d.anisotropic_rank, 0);
    }

    #[test]
    fn parse_round_trip() {
        let q = QuadForm::parse("diag(1,-1,7)@QQ").unwrap();
        assert_eq!(q, form(&FieldDesc::rationals(), &[1, -1, 7]));
        assert_eq!(QuadForm::parse(&q.to_string()).unwrap(), q);
        let p = QuadForm::parse("pfister(3,5)@GF(7)").unwrap();
        assert_eq!(p.rank(), 4);
        let r = QuadForm::parse("diag(t,(t^2+1)/t)@GF(3)(t)").unwrap();
        assert_eq!(QuadForm::parse(&r.to_string()).unwrap(), r);
        assert!(matches!(QuadForm::parse("diag(1,0)@QQ"), Err(Error::ZeroElement)));
        assert!(matches!(QuadForm::parse("diag(1,)@QQ"), Err(Error::Parse { pos: 7, .. })));
    }
}
