//! Acceptance checks shared by the integration tests and `mwk selftest`.
//!
//! `Full` runs every check over the complete field and degree grid; `Quick`
//! restricts to the smallest fields and fewer random samples.

pub mod samples;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chainp::{find_chain, verify_chain, ChainSearch, PfisterTuple, Support};
use crate::error::{Error, Result};
use crate::fields::hilbert::hilbert_symbol;
use crate::fields::place::support_places;
use crate::fields::{FieldDesc, FieldElem, Place};
use crate::fpgroup::{smith_normal_form_dense, InvariantFactors};
use crate::quadform::{decompose_value, QuadForm, DEFAULT_HEIGHT_BOUND};
use crate::residues::{
    finite_is_zero, milnor_image, residue_milnor, residue_mw, residue_witt, residue_witt_class, witt_image,
    UniformizerChoice,
};
use crate::symbolic::{
    normal_form_zero, presentation_check_i_n, presented_power, stabilization, theta_map, verify_exact_sequence,
    verify_pullback, GradedWord, SymbolExpr, Theory, HYPERBOLIC_RELATOR_SIGN,
};
use crate::wittring::enumerate_witt_group;

pub const DEFAULT_SEED: u64 = 0x6d77_6b00;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::Parse { pos: 0, expected: "quick or full".into() }),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

pub const CHECKS: [(u32, &str); 10] = [
    (1, "Witt group presentations"),
    (2, "fundamental ideal presentations"),
    (3, "Witt K-theory comparison"),
    (4, "Milnor-Witt pullback"),
    (5, "Milnor-Witt exact sequence"),
    (6, "symbol identities"),
    (7, "chain equivalence"),
    (8, "value decompositions"),
    (9, "residue maps"),
    (10, "Hilbert reciprocity and Smith normal form"),
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub profile: Profile,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

#[derive(Default)]
struct Log {
    failed: bool,
    lines: Vec<String>,
}

impl Log {
    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        self.failed |= !ok;
        self.lines.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, msg.into()));
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.lines.push(format!("note {}", msg.into()));
    }
}

fn gf(p: u64) -> FieldDesc {
    FieldDesc::prime(p).unwrap()
}

fn primes(profile: Profile, full: &[u64]) -> Vec<u64> {
    match profile {
        Profile::Quick => vec![3],
        Profile::Full => full.to_vec(),
    }
}

fn witt_target(p: u64) -> InvariantFactors {
    if p % 4 == 3 {
        InvariantFactors::new(0, &[4])
    } else {
        InvariantFactors::new(0, &[2, 2])
    }
}

fn witt_presentations(profile: Profile, log: &mut Log) -> Result<()> {
    let ps = match profile {
        Profile::Quick => vec![3, 5],
        Profile::Full => vec![3, 5, 7, 11, 13],
    };
    for p in ps {
        let f = gf(p);
        let (g, gens, rels) = presented_power(&f, 0, HYPERBOLIC_RELATOR_SIGN)?;
        let oracle = enumerate_witt_group(&f)?.group()?.invariant_factors();
        let got = g.invariant_factors();
        log.check(
            got == oracle && oracle == witt_target(p),
            format!("GF({p}): presented {got} ({gens} generators, {rels} relators), oracle {oracle}"),
        );
        let (lit, _, _) = presented_power(&f, 0, -HYPERBOLIC_RELATOR_SIGN)?;
        log.note(format!("GF({p}): with [1] - [-1] in place of [1] + [-1] the quotient is {}", lit.invariant_factors()));
    }
    Ok(())
}

fn ideal_presentations(profile: Profile, log: &mut Log) -> Result<()> {
    let ps = match profile {
        Profile::Quick => vec![3, 5],
        Profile::Full => vec![3, 5, 7, 11, 13],
    };
    for p in ps {
        let f = gf(p);
        for (n, target) in [(1, InvariantFactors::new(0, &[2])), (2, InvariantFactors::trivial())] {
            let r = presentation_check_i_n(&f, n)?;
            log.check(
                r.passed && r.presented == target,
                format!("GF({p}) I^{n}: presented {}, oracle {} ({} relators)", r.presented, r.oracle, r.relators),
            );
        }
    }
    Ok(())
}

fn theta_checks(profile: Profile, log: &mut Log) -> Result<()> {
    for p in primes(profile, &[3, 5, 7]) {
        let f = gf(p);
        for n in -1..=3 {
            let m = theta_map(&f, n, 2)?;
            let s = stabilization(Theory::WK, &f, n, &[1, 2, 3])?;
            let runs: Vec<String> = s.runs.iter().map(|(e, g)| format!("{e}:{g}")).collect();
            log.check(
                m.hom.is_isomorphism() && s.stable,
                format!(
                    "GF({p}) n={n}: theta iso={} ({} relators certified), WK by eta_max [{}]",
                    m.hom.is_isomorphism(),
                    m.certified,
                    runs.join(", ")
                ),
            );
        }
    }
    Ok(())
}

fn mwk_target(p: u64, n: i64) -> InvariantFactors {
    match n {
        _ if n < 0 => witt_target(p),
        0 => InvariantFactors::new(1, &[2]),
        1 => InvariantFactors::new(0, &[p as i64 - 1]),
        _ => InvariantFactors::trivial(),
    }
}

fn pullback_checks(profile: Profile, log: &mut Log) -> Result<()> {
    for p in primes(profile, &[3, 5, 7]) {
        let f = gf(p);
        let oracle = enumerate_witt_group(&f)?.group()?.invariant_factors();
        for n in -2..=3 {
            let r = verify_pullback(&f, n, 2)?;
            let s = stabilization(Theory::MWK, &f, n, &[1, 2, 3])?;
            let target = mwk_target(p, n);
            let corner_ok = r.corners.mwk == target
                && r.corners.pullback == target
                && (n >= 0 || r.corners.mwk == oracle);
            log.check(
                r.passed && corner_ok && s.stable,
                format!(
                    "GF({p}) n={n}: MWK {}, I^n {}, K^M {}, pullback {}, target {target}, square={}, iso={}, stable={}",
                    r.corners.mwk,
                    r.corners.ideal,
                    r.corners.milnor,
                    r.corners.pullback,
                    r.square_commutes,
                    r.induced_injective && r.induced_onto_pullback,
                    s.stable
                ),
            );
        }
    }
    Ok(())
}

fn exactness_checks(profile: Profile, log: &mut Log) -> Result<()> {
    for p in primes(profile, &[3, 5, 7]) {
        let f = gf(p);
        for n in -2..=3 {
            let r = verify_exact_sequence(&f, n, 2)?;
            log.check(
                r.passed,
                format!(
                    "GF({p}) n={n}: 0 -> {} -> {} -> {} -> 0, image=kernel {}, onto {}, injective {}",
                    r.witt_k, r.mwk, r.milnor, r.image_is_kernel, r.varpi_surjective, r.epsilon_injective
                ),
            );
        }
    }
    Ok(())
}

/// Symbol identities quantified over the units of `f`.
pub fn identity_suite(f: &FieldDesc) -> Result<Vec<(String, usize, usize)>> {
    let units = f.units()?;
    let wk = |xs: &[&FieldElem]| SymbolExpr::word(Theory::WK, f, GradedWord::new(0, xs.iter().map(|x| (*x).clone()).collect()), 1);
    let m1 = f.from_i64(-1);
    let mut out = Vec::new();
    let mut run = |name: &str, exprs: Vec<SymbolExpr>| -> Result<()> {
        let total = exprs.len();
        let mut zero = 0;
        for e in &exprs {
            if normal_form_zero(e, 2)? {
                zero += 1;
            }
        }
        out.push((name.to_string(), zero, total));
        Ok(())
    };

    let pairs: Vec<(&FieldElem, &FieldElem)> = units.iter().flat_map(|a| units.iter().map(move |b| (a, b))).collect();
    run("[-a][a] = 0", units.iter().map(|a| wk(&[&a.neg(), a])).collect())?;
    run("[a][a] = [a][-1]", units.iter().map(|a| wk(&[a, a]).sub(&wk(&[a, &m1]))).collect())?;
    run("[ab^2] = [a]", pairs.iter().map(|(a, b)| wk(&[&a.mul(&b.square())]).sub(&wk(&[a]))).collect())?;
    run("[a][b] = [b][a]", pairs.iter().map(|(a, b)| wk(&[a, b]).sub(&wk(&[b, a]))).collect())?;
    let nonzero_sum: Vec<(&FieldElem, &FieldElem, FieldElem)> =
        pairs.iter().filter_map(|(a, b)| {
            let s = a.add(b);
            (!s.is_zero()).then_some((*a, *b, s))
        }).collect();
    run(
        "[a] + [b] = [a+b] + [ab(a+b)]",
        nonzero_sum
            .iter()
            .map(|(a, b, s)| wk(&[a]).add(&wk(&[b])).sub(&wk(&[s])).sub(&wk(&[&a.mul(b).mul(s)])))
            .collect(),
    )?;
    run(
        "[a+b][ab(a+b)] = [a][b]",
        nonzero_sum.iter().map(|(a, b, s)| wk(&[s, &a.mul(b).mul(s)]).sub(&wk(&[a, b]))).collect(),
    )?;
    let mut triples = Vec::new();
    for r in &units {
        for (s, t) in &pairs {
            triples.push(
                wk(&[r, &s.mul(t)]).add(&wk(&[s, t])).sub(&wk(&[&r.mul(s), t])).sub(&wk(&[r, s])),
            );
        }
    }
    run("[r][st] + [s][t] = [rs][t] + [r][s]", triples)?;
    run("[1] = 0", vec![wk(&[&f.one()])])?;
    let unit = |a: &FieldElem| SymbolExpr::unit(Theory::WK, a);
    run("<1> = 1", vec![unit(&f.one())?.sub(&SymbolExpr::int(Theory::WK, f, 1))])?;
    run(
        "<ab> = <a><b>",
        pairs.iter().map(|(a, b)| Ok(unit(&a.mul(b))?.sub(&unit(a)?.mul(&unit(b)?)))).collect::<Result<_>>()?,
    )?;
    let eta = SymbolExpr::eta(Theory::MWK, f);
    let h = SymbolExpr::int(Theory::MWK, f, 2).add(&eta.mul(&SymbolExpr::letter(Theory::MWK, &m1)));
    let mut hs = vec![eta.mul(&h)];
    hs.extend(units.iter().map(|a| SymbolExpr::letter(Theory::MWK, a).mul(&eta).mul(&h)));
    run("eta h = 0 and {a} eta h = 0", hs)?;
    Ok(out)
}

fn identity_checks(profile: Profile, log: &mut Log) -> Result<()> {
    let p = match profile {
        Profile::Quick => 5,
        Profile::Full => 7,
    };
    for (name, zero, total) in identity_suite(&gf(p))? {
        log.check(zero == total, format!("GF({p}) {name}: {zero}/{total} instances vanish"));
    }
    Ok(())
}

fn tuples(f: &FieldDesc, n: usize) -> Result<Vec<PfisterTuple>> {
    let reps = f.square_class_reps()?;
    let mut out: Vec<Vec<crate::fields::SquareClass>> = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| reps.iter().map(move |r| [v.clone(), vec![r.clone()]].concat())).collect();
    }
    out.into_iter().map(|s| PfisterTuple::from_classes(f, s)).collect()
}

fn chain_checks(profile: Profile, log: &mut Log) -> Result<()> {
    let ps = match profile {
        Profile::Quick => vec![5],
        Profile::Full => vec![5, 7],
    };
    for p in ps {
        let f = gf(p);
        for n in [2, 3] {
            let ts = tuples(&f, n)?;
            let (mut found, mut rejected, mut bad) = (0, 0, 0);
            for a in &ts {
                for b in &ts {
                    let iso = a.form().expand().is_isometric(&b.form().expand())?;
                    match find_chain(a, b, &Support::Auto) {
                        Ok(ChainSearch::Found(c)) if iso && verify_chain(a, b, &c).valid => found += 1,
                        Err(Error::IsometryFails) if !iso => rejected += 1,
                        _ => bad += 1,
                    }
                }
            }
            log.check(
                bad == 0,
                format!("GF({p}) n={n}: {found} pairs chained and verified, {rejected} rejected as non-isometric, {bad} failures"),
            );
        }
    }
    let q = FieldDesc::rationals();
    let a = PfisterTuple::from_i64(&q, &[2, 3])?;
    let b = PfisterTuple::from_i64(&q, &[2, -3])?;
    let sup = Support::Classes([-1, 2, 3].iter().map(|&x| crate::fields::square_class(&q.from_i64(x))).collect::<Result<_>>()?);
    let ok = match find_chain(&a, &b, &sup)? {
        ChainSearch::Found(c) => c.len() == 1 && verify_chain(&a, &b, &c).valid,
        ChainSearch::NotFoundWithinSupport { .. } => false,
    };
    log.check(ok, "QQ <<2,3>> to <<2,-3>>: one verified step");
    let (a, b) = (PfisterTuple::from_i64(&q, &[-1, -1])?, PfisterTuple::from_i64(&q, &[1, 1])?);
    let rejected = matches!(find_chain(&a, &b, &Support::Auto), Err(Error::IsometryFails));
    log.check(rejected, "QQ <<-1,-1>> and <<1,1>>: rejected as non-isometric");
    Ok(())
}

fn decomposition_checks(_profile: Profile, log: &mut Log) -> Result<()> {
    for p in [7u64, 11] {
        let f = gf(p);
        let units = f.units()?;
        let (mut total, mut ok) = (0, 0);
        for x in &units {
            for y in &units {
                let (phi, psi) = (QuadForm::new(&f, vec![x.clone()])?, QuadForm::new(&f, vec![y.clone()])?);
                let sum = phi.orth_sum(&psi)?;
                for a in &units {
                    if !sum.represents(a)? {
                        continue;
                    }
                    total += 1;
                    if let Some((v, w)) = decompose_value(&phi, &psi, a, DEFAULT_HEIGHT_BOUND)? {
                        let (s, t) = (phi.eval(&v)?, psi.eval(&w)?);
                        if s.add(&t) == *a && !s.is_zero() && !t.is_zero() {
                            ok += 1;
                        }
                    }
                }
            }
        }
        log.check(ok == total, format!("GF({p}) rank 1 + rank 1: {ok}/{total} values split into units"));
    }
    for p in [3u64, 5] {
        let f = gf(p);
        let one = QuadForm::from_i64(&f, &[1])?;
        let r = decompose_value(&one, &one, &f.one(), DEFAULT_HEIGHT_BOUND)?;
        log.check(r.is_none(), format!("GF({p}) <1> + <1> at 1: no split"));

        let reps: Vec<FieldElem> = f.square_class_reps()?.iter().map(|c| c.rep().clone()).collect();
        let forms: Vec<QuadForm> = (0..8usize)
            .map(|m| QuadForm::new(&f, (0..3).map(|i| reps[(m >> i) & 1].clone()).collect()))
            .collect::<Result<_>>()?;
        let (mut total, mut ok) = (0, 0);
        for phi in &forms {
            for psi in &forms {
                for a in f.units()? {
                    total += 1;
                    if let Some((v, w)) = decompose_value(phi, psi, &a, DEFAULT_HEIGHT_BOUND)? {
                        let (s, t) = (phi.eval(&v)?, psi.eval(&w)?);
                        if s.add(&t) == a && !s.is_zero() && !t.is_zero() {
                            ok += 1;
                        }
                    }
                }
            }
        }
        log.check(ok == total, format!("GF({p}) rank 3 + rank 3: {ok}/{total} values split into units"));
    }
    Ok(())
}

fn parse(s: &str) -> SymbolExpr {
    SymbolExpr::parse(s, None).unwrap()
}

/// Residue zero-ness for uniformizers `pi` and `c pi`.
/// Returns `(agree, nonzero)`.
fn kernel_agrees<R: Rng>(rng: &mut R, f: &FieldDesc, v: &Place) -> Result<(bool, bool)> {
    let u = UniformizerChoice::default_at(f, v)?;
    let c = samples::unit_at(rng, f, v);
    let cu = UniformizerChoice::new(v, u.pi.mul(&c))?;
    Ok(match rng.gen_range(0..3) {
        0 => {
            let q = samples::form(rng, f, 4);
            let z = residue_witt(&q, &u)?.is_zero();
            (z == residue_witt(&q, &cu)?.is_zero(), !z)
        }
        1 => {
            let n = rng.gen_range(1..=2);
            let e = samples::symbol(rng, Theory::KM, f, n, 0);
            let z = finite_is_zero(&residue_milnor(&e, &u)?)?;
            (z == finite_is_zero(&residue_milnor(&e, &cu)?)?, !z)
        }
        _ => {
            let n = rng.gen_range(0..=2);
            let e = samples::symbol(rng, Theory::MWK, f, n, 1);
            let z = finite_is_zero(&residue_mw(&e, &u)?)?;
            (z == finite_is_zero(&residue_mw(&e, &cu)?)?, !z)
        }
    })
}

/// `Upsilon` and `varpi` commute with the residue at `v`.
pub fn coherent(e: &SymbolExpr, u: &UniformizerChoice) -> Result<bool> {
    let r = residue_mw(e, u)?;
    let witt = residue_witt_class(&witt_image(e)?, u)? == witt_image(&r)?;
    let milnor = residue_milnor(&milnor_image(e)?, u)?;
    let diff = milnor_image(&r)?.sub(&milnor);
    Ok(witt && finite_is_zero(&diff)?)
}

fn residue_checks(profile: Profile, seed: u64, log: &mut Log) -> Result<()> {
    let q = FieldDesc::rationals();
    let at7 = UniformizerChoice::default_at(&q, &Place::OddPrime(7))?;
    let f7 = gf(7);
    let w = |e: &[i64]| residue_witt(&QuadForm::from_i64(&q, e).unwrap(), &at7);
    let w7 = |e: &[i64]| crate::wittring::WittClass::of_entries(&f7, e);
    log.check(w(&[7])? == w7(&[1])?, "<7> at 7 is <1>");
    log.check(w(&[3])?.is_zero(), "<3> at 7 is 0");
    log.check(w(&[14])? == w7(&[2])?, "<14> at 7 is <2>");
    let m = |s: &str| residue_milnor(&parse(s), &at7);
    log.check(m("l(7)*l(3)@QQ")? == parse("l(3)@GF(7)"), "l(7)l(3) at 7 is l(3)");
    log.check(m("l(3)*l(5)@QQ")?.is_zero(), "l(3)l(5) at 7 is 0");
    log.check(m("l(7)*l(7)@QQ")? == parse("l(6)@GF(7)"), "l(7)l(7) at 7 is l(-1)");
    let mw = |s: &str| residue_mw(&parse(s), &at7);
    log.check(mw("{7,3}@QQ")? == parse("{3}@GF(7)"), "{7,3} at 7 is {3}");
    log.check(mw("{3,5}@QQ")?.is_zero(), "{3,5} at 7 is 0");
    log.check(mw("eta*{7,3,5}@QQ")? == parse("eta*{3,5}@GF(7)"), "eta{7,3,5} at 7 is eta{3,5}");

    let (n_kernel, n_pair) = match profile {
        Profile::Quick => (100, 40),
        Profile::Full => (500, 200),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [q.clone(), FieldDesc::ratfun(3)?];
    for f in &fields {
        let places = samples::places(f);
        let (mut agree, mut nonzero) = (0, 0);
        for _ in 0..n_kernel {
            let v = &places[rng.gen_range(0..places.len())];
            let (a, nz) = kernel_agrees(&mut rng, f, v)?;
            agree += a as usize;
            nonzero += nz as usize;
        }
        log.check(
            agree == n_kernel,
            format!("{f}: residue vanishes for pi iff for c pi on {agree}/{n_kernel} samples ({nonzero} nonzero)"),
        );
        let mut ok = 0;
        for _ in 0..n_pair {
            let v = &places[rng.gen_range(0..places.len())];
            let u = UniformizerChoice::default_at(f, v)?;
            let n = rng.gen_range(0..=2);
            let e = samples::symbol(&mut rng, Theory::MWK, f, n, 1);
            if coherent(&e, &u)? {
                ok += 1;
            }
        }
        log.check(ok == n_pair, format!("{f}: Witt and Milnor images commute with residues on {ok}/{n_pair} samples"));
    }
    Ok(())
}

fn random_rational<R: Rng>(rng: &mut R, q: &FieldDesc) -> FieldElem {
    const SMALL: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, -1];
    let mut x = q.one();
    for _ in 0..rng.gen_range(1..=4) {
        let p = SMALL[rng.gen_range(0..SMALL.len())];
        x = x.mul(&q.from_i64(p).pow(rng.gen_range(-2..=2)).unwrap());
    }
    x
}

/// `U A V = D` with `U`, `V` invertible over `Z` and `d_i | d_(i+1)`,
/// recomputed outside the decomposition routine.
fn snf_certified(a: &[Vec<BigInt>], rows: usize, cols: usize) -> bool {
    let s = smith_normal_form_dense(&a.to_vec(), rows, cols);
    let mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>], inner: usize, c: usize| -> Vec<Vec<BigInt>> {
        x.iter()
            .map(|r| (0..c).map(|j| (0..inner).map(|k| &r[k] * &y[k][j]).sum()).collect())
            .collect()
    };
    let is_id = |m: &[Vec<BigInt>]| {
        m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
    };
    let uav = mul(&mul(&s.u, a, rows, cols), &s.v, cols, cols);
    let diag_ok = uav.iter().enumerate().all(|(i, r)| {
        r.iter().enumerate().all(|(j, x)| if i == j { *x == s.diag[i] } else { x.is_zero() })
    });
    let chain = (1..s.rank).all(|i| (&s.diag[i] % &s.diag[i - 1]).is_zero());
    let tail = s.diag[s.rank..].iter().all(|d| d.is_zero()) && s.diag.iter().all(|d| !d.is_negative());
    diag_ok
        && is_id(&mul(&s.u, &s.uinv, rows, rows))
        && is_id(&mul(&s.v, &s.vinv, cols, cols))
        && chain
        && tail
}

fn reciprocity_checks(profile: Profile, seed: u64, log: &mut Log) -> Result<()> {
    let n = match profile {
        Profile::Quick => 200,
        Profile::Full => 1000,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
    let q = FieldDesc::rationals();
    let mut ok = 0;
    for _ in 0..n {
        let (a, b) = (random_rational(&mut rng, &q), random_rational(&mut rng, &q));
        let mut places = support_places(&[a.clone(), b.clone()])?;
        places.push(Place::Real);
        if !places.contains(&Place::Two) {
            places.push(Place::Two);
        }
        let mut prod = 1i8;
        for v in &places {
            prod *= hilbert_symbol(&a, &b, v)?;
        }
        if prod == 1 {
            ok += 1;
        }
    }
    log.check(ok == n, format!("product of Hilbert symbols is 1 on {ok}/{n} pairs"));

    let mut ok = 0;
    for _ in 0..n {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let a: Vec<Vec<BigInt>> =
            (0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-20..=20))).collect()).collect();
        if snf_certified(&a, rows, cols) {
            ok += 1;
        }
    }
    log.check(ok == n, format!("Smith normal form certified on {ok}/{n} matrices"));
    Ok(())
}

pub fn run_check(id: u32, profile: Profile, seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut log = Log::default();
    let r = match id {
        1 => witt_presentations(profile, &mut log),
        2 => ideal_presentations(profile, &mut log),
        3 => theta_checks(profile, &mut log),
        4 => pullback_checks(profile, &mut log),
        5 => exactness_checks(profile, &mut log),
        6 => identity_checks(profile, &mut log),
        7 => chain_checks(profile, &mut log),
        8 => decomposition_checks(profile, &mut log),
        9 => residue_checks(profile, seed, &mut log),
        10 => reciprocity_checks(profile, seed, &mut log),
        _ => Err(Error::Parse { pos: 0, expected: "check id 1..10".into() }),
    };
    if let Err(e) = r {
        log.check(false, format!("error: {e}"));
    }
    let name = CHECKS.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).unwrap_or("unknown");
    CheckResult { id, name, passed: !log.failed, details: log.lines, seconds: start.elapsed().as_secs_f64() }
}

pub fn run(profile: Profile, seed: u64) -> SuiteReport {
    let checks: Vec<CheckResult> = CHECKS.iter().map(|(id, _)| run_check(*id, profile, seed)).collect();
    let passed = checks.iter().all(|c| c.passed);
    SuiteReport { profile, seed, checks, passed }
}
