use std::collections::BTreeMap;

use hopfhom::homengine::ParityEntry;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = concat!("hopfhom ", env!("CARGO_PKG_VERSION"));

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckEntry {
    pub fn pass(id: &str) -> Self {
        CheckEntry { id: id.into(), verdict: Verdict::Pass, witness: None }
    }

    pub fn fail(id: &str, witness: impl Into<String>) -> Self {
        CheckEntry { id: id.into(), verdict: Verdict::Fail, witness: Some(witness.into()) }
    }

    pub fn skipped(id: &str, why: impl Into<String>) -> Self {
        CheckEntry { id: id.into(), verdict: Verdict::Skipped, witness: Some(why.into()) }
    }

    pub fn from_result(id: &str, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(id),
            Err(w) => Self::fail(id, w),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Degree {
    pub n: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Periodic {
    pub parity: &'static str,
    pub dim: Option<usize>,
    pub stabilized: bool,
}

pub fn periodic_entries(p: &[ParityEntry; 2]) -> Vec<Periodic> {
    ["even", "odd"]
        .iter()
        .zip(p)
        .map(|(parity, e)| Periodic { parity, dim: e.dim, stabilized: e.stabilized })
        .collect()
}

/// Everything a command emits. Keys are serialized in sorted order.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub object_id: String,
    pub command: String,
    pub theory: Option<String>,
    pub parameters: BTreeMap<String, String>,
    pub degrees: Vec<Degree>,
    pub periodic: Vec<Periodic>,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    fn body(&self) -> Value {
        let mut degrees = self.degrees.clone();
        degrees.sort_by_key(|d| d.n);
        let mut checks = self.checks.clone();
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let stabilized: Value = if self.periodic.is_empty() {
            Value::Null
        } else {
            self.periodic.iter().map(|p| (p.parity.to_string(), Value::Bool(p.stabilized))).collect::<serde_json::Map<_, _>>().into()
        };
        serde_json::json!({
            "object-id": self.object_id,
            "command": self.command,
            "theory": self.theory,
            "parameters": self.parameters,
            "degrees": degrees,
            "periodic": self.periodic,
            "stabilized": stabilized,
            "checks": checks,
            "tool-version": TOOL_VERSION,
        })
    }

    /// Canonical JSON: sorted keys, two-space indent, trailing LF. The content hash is the
    /// sha256 of the compact canonical body without the hash field.
    pub fn to_canonical_json(&self) -> String {
        let mut body = self.body();
        let hash = sha256_hex(serde_json::to_string(&body).expect("report serializes").as_bytes());
        body["content-hash"] = Value::String(hash);
        let mut s = serde_json::to_string_pretty(&body).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_and_hashed() {
        let mut r = Report { object_id: "x".into(), command: "check".into(), ..Default::default() };
        r.checks.push(CheckEntry::fail("b", "w"));
        r.checks.push(CheckEntry::pass("a"));
        r.degrees = vec![Degree { n: 1, dim: 0 }, Degree { n: 0, dim: 1 }];
        let s = r.to_canonical_json();
        assert!(s.ends_with("}\n"));
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["degrees"][0]["n"], 0);
        assert_eq!(v["content-hash"].as_str().unwrap().len(), 64);
        assert!(!r.passed());
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
