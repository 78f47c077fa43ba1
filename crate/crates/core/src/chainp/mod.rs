//! Chain equivalence of Pfister forms.
//!
//! Two tuples are simply equivalent when they differ in at most two slots
//! `i < j` and the binary Pfister forms on those slots are isometric. A
//! certificate is a sequence of such moves; it is found by breadth-first
//! search over tuples whose slots lie in a finite support of square classes.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{square_class, FieldDesc, FieldElem, SquareClass};
use crate::quadform::PfisterForm;
use crate::wittring::WittClass;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PfisterTuple {
    field: FieldDesc,
    slots: Vec<SquareClass>,
}

impl PfisterTuple {
    pub fn new(field: &FieldDesc, slots: &[FieldElem]) -> Result<Self> {
        let slots = slots
            .iter()
            .map(|a| {
                field.require_same(a.field())?;
                square_class(a)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PfisterTuple { field: field.clone(), slots })
    }

    pub fn from_classes(field: &FieldDesc, slots: Vec<SquareClass>) -> Result<Self> {
        for s in &slots {
            field.require_same(s.field())?;
        }
        Ok(PfisterTuple { field: field.clone(), slots })
    }

    pub fn from_i64(field: &FieldDesc, slots: &[i64]) -> Result<Self> {
        Self::new(field, &slots.iter().map(|&a| field.from_i64(a)).collect::<Vec<_>>())
    }

    pub fn of_form(p: &PfisterForm) -> Result<Self> {
        Self::new(p.field(), p.slots())
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::of_form(&PfisterForm::parse(s)?)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn slots(&self) -> &[SquareClass] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn form(&self) -> PfisterForm {
        PfisterForm::new(&self.field, self.slots.iter().map(|s| s.rep().clone()).collect()).unwrap()
    }

    pub fn witt_class(&self) -> Result<WittClass> {
        WittClass::pfister(&self.form())
    }
}

impl fmt::Display for PfisterTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form())
    }
}

/// One move; `i < j` are 1-based slot indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub i: usize,
    pub j: usize,
    pub bi: SquareClass,
    pub bj: SquareClass,
}

#[derive(Serialize, Deserialize)]
struct RawStep {
    i: usize,
    j: usize,
    bi: String,
    bj: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ChainCertificate {
    pub steps: Vec<Step>,
}

impl ChainCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw: Vec<RawStep> = self
            .steps
            .iter()
            .map(|s| RawStep { i: s.i, j: s.j, bi: s.bi.to_string(), bj: s.bj.to_string() })
            .collect();
        serde_json::to_value(raw).unwrap()
    }

    pub fn from_json(field: &FieldDesc, v: &serde_json::Value) -> Result<Self> {
        let raw: Vec<RawStep> = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse { pos: 0, expected: format!("certificate step list ({e})") })?;
        let steps = raw
            .into_iter()
            .map(|r| {
                Ok(Step {
                    i: r.i,
                    j: r.j,
                    bi: square_class(&field.parse_elem(&r.bi)?)?,
                    bj: square_class(&field.parse_elem(&r.bj)?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainCertificate { steps })
    }

    pub fn parse(field: &FieldDesc, s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), expected: "JSON".into() })?;
        Self::from_json(field, &v)
    }
}

impl Serialize for ChainCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn binary_class(a: &SquareClass, b: &SquareClass) -> Result<WittClass> {
    let f = a.field();
    WittClass::pfister(&PfisterForm::new(f, vec![a.rep().clone(), b.rep().clone()])?)
}

fn check_pair(t1: &PfisterTuple, t2: &PfisterTuple) -> Result<()> {
    t1.field.require_same(&t2.field)?;
    if t1.len() != t2.len() {
        return Err(Error::LengthMismatch(t1.len(), t2.len()));
    }
    Ok(())
}

/// Whether the tuples differ by one move on slots `i < j` (0-based).
fn move_valid(t1: &PfisterTuple, t2: &PfisterTuple, i: usize, j: usize) -> Result<bool> {
    if i >= j || j >= t1.len() {
        return Ok(false);
    }
    let others = (0..t1.len()).filter(|&k| k != i && k != j).all(|k| t1.slots[k] == t2.slots[k]);
    Ok(others && binary_class(&t1.slots[i], &t1.slots[j])? == binary_class(&t2.slots[i], &t2.slots[j])?)
}

pub fn simply_equivalent(t1: &PfisterTuple, t2: &PfisterTuple) -> Result<bool> {
    check_pair(t1, t2)?;
    let n = t1.len();
    for i in 0..n {
        for j in i + 1..n {
            if move_valid(t1, t2, i, j)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug)]
pub enum Support {
    Auto,
    Classes(Vec<SquareClass>),
}

#[derive(Clone, Debug)]
pub enum ChainSearch {
    Found(ChainCertificate),
    /// Every tuple over the support reachable from the source was visited.
    NotFoundWithinSupport { support: Vec<SquareClass>, states: usize },
}

/// Subgroup of square classes generated by `gens`, sorted.
fn generated(gens: &[SquareClass], field: &FieldDesc) -> Vec<SquareClass> {
    let mut set: BTreeSet<SquareClass> = BTreeSet::new();
    set.insert(square_class(&field.one()).unwrap());
    for g in gens {
        if set.contains(g) {
            continue;
        }
        let extra: Vec<SquareClass> = set.iter().map(|x| x.mul(g)).collect();
        set.extend(extra);
    }
    set.into_iter().collect()
}

fn support_classes(t1: &PfisterTuple, t2: &PfisterTuple, support: &Support) -> Result<Vec<SquareClass>> {
    let f = &t1.field;
    if f.is_finite() {
        return Ok(f.square_class_reps()?);
    }
    let mut gens: Vec<SquareClass> = t1.slots.iter().chain(&t2.slots).cloned().collect();
    gens.push(square_class(&f.from_i64(-1))?);
    if let Support::Classes(extra) = support {
        for c in extra {
            f.require_same(c.field())?;
        }
        gens.extend(extra.iter().cloned());
    }
    Ok(generated(&gens, f))
}

pub fn find_chain(t1: &PfisterTuple, t2: &PfisterTuple, support: &Support) -> Result<ChainSearch> {
    check_pair(t1, t2)?;
    if !t1.form().expand().is_isometric(&t2.form().expand())? {
        return Err(Error::IsometryFails);
    }
    if t1 == t2 {
        return Ok(ChainSearch::Found(ChainCertificate::default()));
    }
    let classes = support_classes(t1, t2, support)?;
    let n = t1.len();
    let pos: HashMap<&SquareClass, usize> = classes.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let encode = |t: &PfisterTuple| -> Option<Vec<usize>> { t.slots.iter().map(|s| pos.get(s).copied()).collect() };
    let (start, goal) = match (encode(t1), encode(t2)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(ChainSearch::NotFoundWithinSupport { support: classes, states: 0 }),
    };

    // pairs grouped by the Witt class of their binary Pfister form
    let m = classes.len();
    let mut bucket_of = vec![0usize; m * m];
    let mut buckets: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut ids: HashMap<WittClass, usize> = HashMap::new();
    for a in 0..m {
        for b in 0..m {
            let w = binary_class(&classes[a], &classes[b])?;
            let next = ids.len();
            let id = *ids.entry(w).or_insert(next);
            if id == buckets.len() {
                buckets.push(Vec::new());
            }
            buckets[id].push((a, b));
            bucket_of[a * m + b] = id;
        }
    }

    let mut parent: HashMap<Vec<usize>, (Vec<usize>, usize, usize)> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(start.clone(), (Vec::new(), 0, 0));
    queue.push_back(start.clone());
    while let Some(cur) = queue.pop_front() {
        for i in 0..n {
            for j in i + 1..n {
                for &(a, b) in &buckets[bucket_of[cur[i] * m + cur[j]]] {
                    if (a, b) == (cur[i], cur[j]) {
                        continue;
                    }
                    let mut next = cur.clone();
                    next[i] = a;
                    next[j] = b;
                    if parent.contains_key(&next) {
                        continue;
                    }
                    parent.insert(next.clone(), (cur.clone(), i, j));
                    if next == goal {
                        return Ok(ChainSearch::Found(unwind(&parent, &start, next, &classes)));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(ChainSearch::NotFoundWithinSupport { support: classes, states: parent.len() })
}

fn unwind(
    parent: &HashMap<Vec<usize>, (Vec<usize>, usize, usize)>,
    start: &[usize],
    mut cur: Vec<usize>,
    classes: &[SquareClass],
) -> ChainCertificate {
    let mut steps = Vec::new();
    while cur != start {
        let (prev, i, j) = parent[&cur].clone();
        steps.push(Step { i: i + 1, j: j + 1, bi: classes[cur[i]].clone(), bj: classes[cur[j]].clone() });
        cur = prev;
    }
    steps.reverse();
    ChainCertificate { steps }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainVerdict {
    pub valid: bool,
    /// 1-based index of the first bad step; `len + 1` when the chain ends
    /// away from the target.
    pub failing_step: Option<usize>,
    pub reason: Option<String>,
}

impl ChainVerdict {
    fn ok() -> Self {
        ChainVerdict { valid: true, failing_step: None, reason: None }
    }

    fn fail(step: usize, reason: String) -> Self {
        ChainVerdict { valid: false, failing_step: Some(step), reason: Some(reason) }
    }
}

pub fn verify_chain(t1: &PfisterTuple, t2: &PfisterTuple, cert: &ChainCertificate) -> ChainVerdict {
    if t1.field != t2.field || t1.len() != t2.len() {
        return ChainVerdict::fail(0, "tuples have different fields or lengths".into());
    }
    let mut cur = t1.clone();
    for (k, s) in cert.steps.iter().enumerate() {
        let step = k + 1;
        if s.i == 0 || s.i >= s.j || s.j > cur.len() {
            return ChainVerdict::fail(step, format!("bad slot pair ({}, {})", s.i, s.j));
        }
        if s.bi.field() != &cur.field || s.bj.field() != &cur.field {
            return ChainVerdict::fail(step, "slot over a different field".into());
        }
        let mut next = cur.clone();
        next.slots[s.i - 1] = s.bi.clone();
        next.slots[s.j - 1] = s.bj.clone();
        match move_valid(&cur, &next, s.i - 1, s.j - 1) {
            Ok(true) => cur = next,
            Ok(false) => return ChainVerdict::fail(step, format!("slots ({}, {}) are not isometric", s.i, s.j)),
            Err(e) => return ChainVerdict::fail(step, e.to_string()),
        }
    }
    if cur != *t2 {
        return ChainVerdict::fail(cert.len() + 1, "chain does not end at the target".into());
    }
    ChainVerdict::ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(f: &FieldDesc, s: &[i64]) -> PfisterTuple {
        PfisterTuple::from_i64(f, s).unwrap()
    }

    fn found(r: ChainSearch) -> ChainCertificate {
        match r {
            ChainSearch::Found(c) => c,
            other => panic!("no chain: {other:?}"),
        }
    }

    #[test]
    fn simple_equivalence() {
        let f7 = FieldDesc::prime(7).unwrap();
        assert!(simply_equivalent(&tuple(&f7, &[3, 5]), &tuple(&f7, &[5, 3])).unwrap());
        let q = FieldDesc::rationals();
        assert!(simply_equivalent(&tuple(&q, &[2, 3]), &tuple(&q, &[2, -3])).unwrap());
        assert!(!simply_equivalent(&tuple(&q, &[-1, -1]), &tuple(&q, &[1, 1])).unwrap());
        assert_eq!(
            simply_equivalent(&tuple(&q, &[2, 3]), &tuple(&q, &[2, 3, 5])),
            Err(Error::LengthMismatch(2, 3))
        );
    }

    #[test]
    fn chains_over_f7() {
        let f7 = FieldDesc::prime(7).unwrap();
        // 3 and 5 share a square class mod 7
        let (a, b) = (tuple(&f7, &[3, 5]), tuple(&f7, &[5, 3]));
        assert!(found(find_chain(&a, &b, &Support::Auto).unwrap()).is_empty());
        let (s, t) = (tuple(&f7, &[1, 3]), tuple(&f7, &[3, 1]));
        let c = found(find_chain(&s, &t, &Support::Auto).unwrap());
        assert_eq!(c.len(), 1);
        assert!(verify_chain(&s, &t, &c).valid);

        let one = tuple(&f7, &[1, 1]);
        let c = found(find_chain(&a, &one, &Support::Auto).unwrap());
        assert!(verify_chain(&a, &one, &c).valid);
        assert!(verify_chain(&one, &one, &ChainCertificate::default()).valid);
    }

    #[test]
    fn rational_one_step() {
        let q = FieldDesc::rationals();
        let (a, b) = (tuple(&q, &[2, 3]), tuple(&q, &[2, -3]));
        let sup = Support::Classes(vec![
            square_class(&q.from_i64(-1)).unwrap(),
            square_class(&q.from_i64(2)).unwrap(),
            square_class(&q.from_i64(3)).unwrap(),
        ]);
        let c = found(find_chain(&a, &b, &sup).unwrap());
        assert_eq!(c.len(), 1);
        assert_eq!(c.to_json(), serde_json::json!([{"i":1,"j":2,"bi":"2","bj":"-3"}]));
        assert_eq!(find_chain(&tuple(&q, &[-1, -1]), &tuple(&q, &[1, 1]), &Support::Auto).unwrap_err(), Error::IsometryFails);
    }

    #[test]
    fn tampering_is_located() {
        let f7 = FieldDesc::prime(7).unwrap();
        let (a, b) = (tuple(&f7, &[3, 3, 1]), tuple(&f7, &[1, 1, 3]));
        let mut c = found(find_chain(&a, &b, &Support::Auto).unwrap());
        assert!(verify_chain(&a, &b, &c).valid);
        let k = c.len() - 1;
        c.steps[k].i = c.steps[k].j;
        let v = verify_chain(&a, &b, &c);
        assert!(!v.valid);
        assert_eq!(v.failing_step, Some(k + 1));
    }

    #[test]
    fn certificate_json_round_trip() {
        let f7 = FieldDesc::prime(7).unwrap();
        let c = found(find_chain(&tuple(&f7, &[1, 3]), &tuple(&f7, &[3, 1]), &Support::Auto).unwrap());
        let back = ChainCertificate::from_json(&f7, &c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}
