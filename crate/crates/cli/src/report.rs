use std::io::Write;
use std::path::Path;

use mwk_core::error::Error;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// `verdict` is `Some(false)` for a mathematical "no" (exit 2).
pub struct Outcome {
    pub result: Result<Value, Value>,
    pub verdict: Option<bool>,
    pub provenance: Map<String, Value>,
}

impl Outcome {
    pub fn ok(result: Value) -> Self {
        Outcome { result: Ok(result), verdict: None, provenance: Map::new() }
    }

    pub fn verdict(result: Value, holds: bool) -> Self {
        Outcome { result: Ok(result), verdict: Some(holds), provenance: Map::new() }
    }

    pub fn error(e: &Error) -> Self {
        let mut body = json!({ "kind": kind(e), "message": e.to_string() });
        if let Error::Parse { pos, expected } = e {
            body["position"] = json!(pos);
            body["expected"] = json!(expected);
        }
        Outcome { result: Err(body), verdict: None, provenance: Map::new() }
    }

    pub fn usage(message: &str) -> Self {
        Outcome { result: Err(json!({ "kind": "Usage", "message": message })), verdict: None, provenance: Map::new() }
    }

    pub fn with(mut self, key: &str, v: Value) -> Self {
        self.provenance.insert(key.to_string(), v);
        self
    }

    pub fn exit_code(&self) -> u8 {
        match (&self.result, self.verdict) {
            (Err(_), _) => 1,
            (Ok(_), Some(false)) => 2,
            _ => 0,
        }
    }
}

fn kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

pub struct Report {
    value: Value,
}

impl Report {
    pub fn new(argv: &[String], outcome: Outcome, seconds: f64) -> Self {
        let args: Vec<&str> = argv.iter().skip(1).map(String::as_str).collect();
        let mut value = json!({
            "schema_version": SCHEMA_VERSION,
            "command": { "argv": args },
            "provenance": Value::Object(outcome.provenance),
            "timing": { "seconds": seconds },
        });
        match outcome.result {
            Ok(r) => {
                value["status"] = json!("ok");
                value["result"] = r;
                if let Some(v) = outcome.verdict {
                    value["verdict"] = json!(v);
                }
            }
            Err(e) => {
                value["status"] = json!("error");
                value["error"] = e;
            }
        }
        Report { value }
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(&self.value).unwrap()
        } else {
            serde_json::to_string(&self.value).unwrap()
        }
    }
}

/// Writes beside `path` and renames, so readers never see a partial file.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = std::fs::File::create(&tmp)?;
    f.write_all(text.as_bytes())?;
    f.write_all(b"\n")?;
    f.sync_all()?;
    std::fs::rename(&tmp, path)
}
