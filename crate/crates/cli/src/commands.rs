use mwk_core::chainp::{find_chain, verify_chain, ChainCertificate, ChainSearch, PfisterTuple, Support};
use mwk_core::error::{Error, Result};
use mwk_core::fields::{square_class, FieldDesc, FieldElem, Place};
use mwk_core::fpgroup::{smith_normal_form, InvariantFactors, IntMatrix};
use mwk_core::quadform::{GramMatrix, PfisterForm, QuadForm};
use mwk_core::residues::{unramified_check, Element, UniformizerChoice};
use mwk_core::suite::{self, Profile, DEFAULT_SEED};
use mwk_core::symbolic::{
    present_group, presentation_check_i_n, stabilization, verify_exact_sequence, verify_pullback, SymbolExpr, Theory,
};
use serde_json::{json, Value};

use crate::report::Outcome;
use crate::{ChainCommand, Cli, Command, KgroupCommand, PfisterCommand, QfCommand, ResidueCommand};

pub fn run(cli: &Cli) -> Outcome {
    let eta = cli.global.eta_max;
    let r = match &cli.command {
        Command::Qf(c) => qf(c),
        Command::Pfister(c) => pfister(c),
        Command::Chain(c) => chain(c),
        Command::Kgroup(c) => kgroup(c, eta),
        Command::Residue(c) => residue(c),
        Command::Snf { matrix } => snf(matrix),
        Command::Selftest { profile } => selftest(profile, cli.global.seed.unwrap_or(DEFAULT_SEED)),
    };
    r.unwrap_or_else(|e| Outcome::error(&e))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn elems(v: &[FieldElem]) -> Value {
    json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn factors(g: &InvariantFactors) -> Value {
    to_json(g)
}

/// A Gram matrix `[[..],..]@F` is diagonalized; other inputs parse as forms.
fn parse_form(s: &str) -> Result<QuadForm> {
    if s.trim_start().starts_with('[') {
        GramMatrix::parse(s)?.diagonalize()
    } else {
        QuadForm::parse(s)
    }
}

fn qf(c: &QfCommand) -> Result<Outcome> {
    Ok(match c {
        QfCommand::Diag { form } => {
            if form.trim_start().starts_with('[') {
                let (d, basis) = GramMatrix::parse(form)?.diagonalize_with_basis()?;
                let basis: Vec<Value> = basis.iter().map(|r| elems(r)).collect();
                Outcome::ok(json!({ "form": d.to_string(), "entries": elems(d.entries()), "basis": basis }))
            } else {
                let d = QuadForm::parse(form)?;
                Outcome::ok(json!({ "form": d.to_string(), "entries": elems(d.entries()) }))
            }
        }
        QfCommand::Isometric { a, b } => {
            let (a, b) = (parse_form(a)?, parse_form(b)?);
            a.field().require_same(b.field())?;
            let iso = a.is_isometric(&b)?;
            Outcome::verdict(json!({ "isometric": iso }), iso)
        }
        QfCommand::Isotropic { form } => {
            let q = parse_form(form)?;
            let iso = q.is_isotropic()?;
            let v = if iso && q.field().is_finite() { q.isotropic_vector()? } else { None };
            Outcome::verdict(json!({ "isotropic": iso, "vector": v.map(|v| elems(&v)) }), iso)
        }
        QfCommand::Witt { form } => {
            let q = parse_form(form)?;
            let d = q.witt_decompose()?;
            Outcome::ok(json!({
                "class": to_json(&d.witt_class),
                "witt_index": d.witt_index,
                "anisotropic_rank": d.anisotropic_rank,
            }))
        }
        QfCommand::Represents { form, value } => {
            let q = parse_form(form)?;
            let c = q.field().parse_elem(value)?;
            let rep = q.represents(&c)?;
            let v = if rep && q.field().is_finite() { q.representation(&c)? } else { None };
            Outcome::verdict(json!({ "represents": rep, "vector": v.map(|v| elems(&v)) }), rep)
        }
    })
}

fn pfister(c: &PfisterCommand) -> Result<Outcome> {
    let (s, pure) = match c {
        PfisterCommand::Expand { form } => (form, false),
        PfisterCommand::Pure { form } => (form, true),
    };
    let p = PfisterForm::parse(s)?;
    let q = if pure { p.pure_subform() } else { p.expand() };
    Ok(Outcome::ok(json!({ "form": q.to_string(), "rank": q.rank() })))
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse { pos: 0, expected: format!("readable file {path}: {e}") }),
        None => Ok(s.to_string()),
    }
}

fn chain(c: &ChainCommand) -> Result<Outcome> {
    match c {
        ChainCommand::Find { a, b, support } => {
            let (a, b) = (PfisterTuple::parse(a)?, PfisterTuple::parse(b)?);
            let f = a.field().clone();
            let support = if support.is_empty() {
                Support::Auto
            } else {
                Support::Classes(support.iter().map(|s| square_class(&f.parse_elem(s)?)).collect::<Result<_>>()?)
            };
            Ok(match find_chain(&a, &b, &support) {
                Ok(ChainSearch::Found(cert)) => {
                    let steps = cert.len();
                    Outcome::verdict(json!({ "found": true, "steps": steps, "certificate": cert.to_json() }), true)
                }
                Ok(ChainSearch::NotFoundWithinSupport { support, states }) => {
                    let support: Vec<String> = support.iter().map(|c| c.rep().to_string()).collect();
                    Outcome::verdict(json!({ "found": false, "reason": "not found within support" }), false)
                        .with("support", json!(support))
                        .with("states_visited", json!(states))
                }
                Err(Error::IsometryFails) => {
                    Outcome::verdict(json!({ "found": false, "reason": "forms are not isometric" }), false)
                }
                Err(e) => return Err(e),
            })
        }
        ChainCommand::Verify { a, b, certificate } => {
            let (a, b) = (PfisterTuple::parse(a)?, PfisterTuple::parse(b)?);
            let cert = ChainCertificate::parse(a.field(), &read_arg(certificate)?)?;
            let v = verify_chain(&a, &b, &cert);
            let valid = v.valid;
            Ok(Outcome::verdict(to_json(&v), valid))
        }
    }
}

fn prime_field(s: &str) -> Result<FieldDesc> {
    let f = FieldDesc::parse(s)?;
    if !f.is_finite() {
        return Err(Error::UnsupportedField(format!("K-groups are presented over finite fields, got {f}")));
    }
    Ok(f)
}

fn kgroup(c: &KgroupCommand, eta: u32) -> Result<Outcome> {
    Ok(match c {
        KgroupCommand::Compute { theory, group } => {
            let theory: Theory = theory.parse()?;
            let f = prime_field(&group.field)?;
            let p = present_group(theory, &f, group.degree, eta)?;
            let stats = p.stats();
            let mut out = Outcome::ok(factors(&p.invariant_factors()))
                .with("eta_max", json!(eta))
                .with("generators", json!(stats.generators))
                .with("relators", json!(stats.relators));
            if theory != Theory::KM {
                let s = stabilization(theory, &f, group.degree, &[eta, eta + 1])?;
                out = out.with("stabilization", to_json(&s));
            }
            out
        }
        KgroupCommand::VerifyPullback { group } => {
            let r = verify_pullback(&prime_field(&group.field)?, group.degree, eta)?;
            let passed = r.passed;
            Outcome::verdict(to_json(&r), passed).with("eta_max", json!(eta))
        }
        KgroupCommand::VerifyExact { group } => {
            let r = verify_exact_sequence(&prime_field(&group.field)?, group.degree, eta)?;
            let passed = r.passed;
            Outcome::verdict(to_json(&r), passed).with("eta_max", json!(eta))
        }
        KgroupCommand::VerifyPresentation { group } => {
            let r = presentation_check_i_n(&prime_field(&group.field)?, group.degree)?;
            let passed = r.passed;
            Outcome::verdict(to_json(&r), passed).with("oracle", json!("enumerated Witt table"))
        }
    })
}

fn parse_element(s: &str) -> Result<Element> {
    let t = s.trim_start();
    if t.starts_with("diag(") || t.starts_with("pfister(") {
        Ok(Element::Form(QuadForm::parse(s)?))
    } else {
        Ok(Element::Symbol(SymbolExpr::parse(s, None)?))
    }
}

fn residue(c: &ResidueCommand) -> Result<Outcome> {
    match c {
        ResidueCommand::At { element, place, uniformizer } => {
            let x = parse_element(element)?;
            let f = x.field().clone();
            let v = Place::parse(place, &f)?;
            let u = match uniformizer {
                Some(pi) => UniformizerChoice::new(&v, f.parse_elem(pi)?)?,
                None => UniformizerChoice::default_at(&f, &v)?,
            };
            let (r, zero) = x.residue(&u)?;
            Ok(Outcome::ok(json!({
                "place": v.to_string(),
                "uniformizer": u.pi.to_string(),
                "residue_field": u.residue_field()?.to_string(),
                "residue": r,
                "zero": zero,
            })))
        }
        ResidueCommand::Unramified { element, places } => {
            let x = parse_element(element)?;
            let list = places.iter().map(|p| Place::parse(p, x.field())).collect::<Result<Vec<_>>>()?;
            let r = unramified_check(&x, (!list.is_empty()).then_some(&list[..]))?;
            let ok = r.unramified;
            Ok(Outcome::verdict(to_json(&r), ok))
        }
    }
}

fn int(x: &impl ToString) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn matrix_json(m: &[Vec<impl ToString>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(int).collect())).collect())
}

fn snf(matrix: &str) -> Result<Outcome> {
    let bad = |pos| Error::Parse { pos, expected: "JSON array of integer rows, e.g. [[2,4],[6,8]]".into() };
    let v: Value = serde_json::from_str(matrix).map_err(|e| bad(e.column().saturating_sub(1)))?;
    let rows: Vec<Vec<i64>> = serde_json::from_value(v).map_err(|_| bad(0))?;
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
    }
    let m = IntMatrix::from_i64(&rows)?;
    let s = smith_normal_form(&m);
    let torsion: Vec<Value> = s.torsion().iter().map(int).collect();
    Ok(Outcome::ok(json!({
        "rows": s.rows,
        "cols": s.cols,
        "diagonal": s.diag.iter().map(int).collect::<Vec<_>>(),
        "rank": s.rank,
        "cokernel": { "free": cols - s.rank, "torsion": torsion },
        "u": matrix_json(&s.u),
        "v": matrix_json(&s.v),
    }))
    .with("verified", json!("U A V = D recomputed; U and V invertible over Z")))
}

fn selftest(profile: &str, seed: u64) -> Result<Outcome> {
    let profile: Profile = profile.parse()?;
    let report = suite::run(profile, seed);
    let passed = report.passed;
    let mut value = to_json(&report);
    // timings go to provenance so the payload is reproducible
    let mut seconds = serde_json::Map::new();
    for c in value["checks"].as_array_mut().into_iter().flatten() {
        if let Some(s) = c.as_object_mut().and_then(|o| o.remove("seconds")) {
            seconds.insert(c["id"].to_string(), s);
        }
    }
    Ok(Outcome::verdict(value, passed).with("seed", json!(seed)).with("check_seconds", Value::Object(seconds)))
}
