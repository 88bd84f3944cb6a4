//! Report envelope: a digest over everything except timing.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Default)]
pub struct Inputs(BTreeMap<String, String>);

impl Inputs {
    pub fn add(&mut self, name: &str, bytes: &[u8]) {
        self.0.insert(name.to_owned(), sha256_hex(bytes));
    }

    pub fn to_value(&self) -> Value {
        json!(self.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Inputs,
    pub body: Result<Value, ErrorBody>,
    /// Wall-clock timings in milliseconds; not covered by the digest.
    pub timing: Value,
}

impl Report {
    /// The digest-covered region: command, version, inputs and result or error.
    pub fn covered(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "version": VERSION,
            "inputs": self.inputs.to_value(),
        });
        match &self.body {
            Ok(r) => v["result"] = r.clone(),
            Err(e) => v["error"] = json!(e),
        }
        v
    }

    pub fn digest(&self) -> String {
        sha256_hex(serde_json::to_string(&self.covered()).expect("json values serialize").as_bytes())
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.covered();
        v["digest"] = json!(self.digest());
        v["timing"] = self.timing.clone();
        v
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{} ({})\n", self.command, VERSION);
        match &self.body {
            Ok(Value::Object(map)) => {
                for (k, v) in map {
                    out.push_str(&format!("{k}: {}\n", text_value(v)));
                }
            }
            Ok(v) => out.push_str(&format!("{}\n", text_value(v))),
            Err(e) => out.push_str(&format!("error [{}]: {}\n", e.code, e.message)),
        }
        out.push_str(&format!("digest: {}\n", self.digest()));
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("json values serialize"),
    }
}
