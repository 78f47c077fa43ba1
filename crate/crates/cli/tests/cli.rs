use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn mwk(args: &[&str]) -> (i32, Value) {
    mwk_env(args, &[])
}

fn mwk_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mwk"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), report)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mwk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn isometric_squares_over_gf5() {
    let (code, r) = mwk(&["qf", "isometric", "diag(1,1)@GF(5)", "diag(2,2)@GF(5)"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["isometric"], true);
    assert_eq!(r["schema_version"], 1);
}

#[test]
fn negative_degree_milnor_witt_group_of_gf7() {
    let (code, r) = mwk(&["kgroup", "compute", "--theory", "MWK", "--field", "GF(7)", "--degree", "-1", "--eta-max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"], serde_json::json!({ "free": 0, "torsion": [4] }));
    assert_eq!(r["provenance"]["eta_max"], 2);
    assert_eq!(r["provenance"]["stabilization"]["stable"], true);
}

#[test]
fn tampered_certificate_is_located() {
    let (a, b) = ("pfister(2,3)@QQ", "pfister(2,-3)@QQ");
    let (code, found) = mwk(&["chain", "find", a, b]);
    assert_eq!(code, 0);
    let cert = found["result"]["certificate"].to_string();
    let (code, ok) = mwk(&["chain", "verify", a, b, &cert]);
    assert_eq!((code, &ok["result"]["valid"]), (0, &Value::Bool(true)));

    let tampered = cert.replace("\"-3\"", "\"5\"");
    let path = scratch("cert.json");
    std::fs::write(&path, &tampered).unwrap();
    let (code, bad) = mwk(&["chain", "verify", a, b, &format!("@{}", path.display())]);
    assert_eq!(code, 2);
    assert_eq!(bad["result"]["valid"], false);
    assert_eq!(bad["result"]["failing_step"], 1);
}

#[test]
fn non_isometric_tuples_are_a_verdict_not_an_error() {
    let (code, r) = mwk(&["chain", "find", "pfister(-1,-1)@QQ", "pfister(1,1)@QQ"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["found"], false);
}

#[test]
fn errors_exit_one_with_position() {
    let (code, r) = mwk(&["qf", "witt", "diag(1,2@QQ"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["kind"], "Parse");
    assert!(r["error"]["position"].is_u64());

    let (code, r) = mwk(&["qf", "frobnicate"]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["kind"], "Usage");

    let (code, r) = mwk(&["qf", "isometric", "diag(1)@GF(5)", "diag(1)@GF(7)"]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["kind"], "FieldMismatch");
}

#[test]
fn generator_cap_comes_from_the_environment() {
    let args = ["kgroup", "compute", "--theory", "WK", "--field", "GF(7)", "--degree", "1"];
    let (code, r) = mwk_env(&args, &[("MWK_GENERATOR_CAP", "10")]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["kind"], "TruncationOverflow");
    let (code, r) = mwk(&args);
    assert_eq!(code, 0);
    assert_eq!(r["result"], serde_json::json!({ "free": 0, "torsion": [2] }));
}

#[test]
fn payloads_are_reproducible() {
    let args = ["kgroup", "verify-pullback", "--field", "GF(5)", "--degree", "1"];
    let strip = |mut r: Value| {
        r.as_object_mut().unwrap().remove("timing");
        r.to_string()
    };
    let (c1, r1) = mwk(&args);
    let (c2, r2) = mwk(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(strip(r1), strip(r2));
}

#[test]
fn output_file_matches_stdout() {
    let path = scratch("report.json");
    let p = path.display().to_string();
    let (code, r) = mwk(&["snf", "[[2,4],[6,8]]", "--output", &p, "--pretty"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["cokernel"], serde_json::json!({ "free": 0, "torsion": [2, 4] }));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, r);
}

#[test]
fn residues_and_unramified_checks() {
    let (code, r) = mwk(&["residue", "at", "diag(21)@QQ", "--place", "7"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["residue"], "<3>");

    let (code, r) = mwk(&["residue", "at", "eta*{7,3,5}@QQ", "--place", "7", "--uniformizer", "-7"]);
    assert_eq!((code, &r["result"]["zero"]), (0, &Value::Bool(true)));
    let (code, r) = mwk(&["residue", "at", "{7,3}@QQ", "--place", "7", "--uniformizer", "-7"]);
    assert_eq!((code, &r["result"]["zero"]), (0, &Value::Bool(false)));

    let (code, r) = mwk(&["residue", "unramified", "{3,5}@QQ", "--places", "7"]);
    assert_eq!((code, &r["result"]["unramified"]), (0, &Value::Bool(true)));
    let (code, _) = mwk(&["residue", "unramified", "{t,t+1}@GF(3)(t)"]);
    assert_eq!(code, 2);
}

#[test]
fn forms_and_pfister_verbs() {
    let (code, r) = mwk(&["qf", "isotropic", "diag(1,1,1)@QQ"]);
    assert_eq!((code, &r["result"]["isotropic"]), (2, &Value::Bool(false)));
    let (code, r) = mwk(&["qf", "represents", "diag(1,1)@QQ", "3"]);
    assert_eq!((code, &r["result"]["represents"]), (2, &Value::Bool(false)));
    let (code, r) = mwk(&["qf", "represents", "diag(1,1)@QQ", "5"]);
    assert_eq!((code, &r["result"]["represents"]), (0, &Value::Bool(true)));
    let (code, r) = mwk(&["qf", "represents", "diag(1,1)@GF(7)", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["vector"].as_array().unwrap().len(), 2);
    let (code, r) = mwk(&["pfister", "pure", "pfister(2,3)@QQ"]);
    assert_eq!((code, &r["result"]["rank"]), (0, &Value::from(3)));
    let (code, r) = mwk(&["qf", "witt", "diag(1,-1,2)@GF(7)"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["witt_index"], 1);
}

#[test]
fn quick_selftest_passes() {
    let (code, r) = mwk(&["selftest", "quick"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["result"]["checks"].as_array().unwrap().len(), 10);
    assert!(r["timing"]["seconds"].as_f64().unwrap() < 60.0);
}
