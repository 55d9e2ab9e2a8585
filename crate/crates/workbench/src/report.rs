//! Command results in machine-readable and human-readable form.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub ambient: Option<usize>,
    pub ideal: Option<usize>,
    pub quotient: Option<usize>,
}

impl Dims {
    pub fn new(ambient: usize, ideal: usize) -> Self {
        Dims {
            ambient: Some(ambient),
            ideal: Some(ideal),
            quotient: Some(ambient - ideal),
        }
    }
}

/// One command's outcome. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub field: String,
    pub degree: Option<usize>,
    pub dims: Dims,
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    /// Command-specific values, sorted by key.
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, inputs: &str, field: String) -> Self {
        Report {
            command: command.into(),
            inputs_digest: sha256_hex(&format!("{command}\n{inputs}")),
            field,
            degree: None,
            dims: Dims::default(),
            verdict: None,
            basis: None,
            details: Map::new(),
            elapsed_ms: None,
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.into(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("command".into(), self.command.clone()),
            ("field".into(), self.field.clone()),
        ];
        let opt = |v: Option<usize>| v.map(|x| x.to_string());
        for (k, v) in [
            ("degree", opt(self.degree)),
            ("ambient", opt(self.dims.ambient)),
            ("ideal", opt(self.dims.ideal)),
            ("quotient", opt(self.dims.quotient)),
            ("verdict", self.verdict.map(|b| b.to_string())),
        ] {
            if let Some(v) = v {
                rows.push((k.into(), v));
            }
        }
        for (k, v) in &self.details {
            if let Some(text) = scalar(v) {
                rows.push((k.replace('_', " "), text));
            }
        }
        if let Some(ms) = self.elapsed_ms {
            rows.push(("elapsed ms".into(), ms.to_string()));
        }
        rows.push(("inputs digest".into(), self.inputs_digest.clone()));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            writeln!(out, "{k:<width$}  {v}").unwrap();
        }
        for (k, v) in &self.details {
            if let Value::Array(items) = v {
                writeln!(out, "{}:", k.replace('_', " ")).unwrap();
                for item in items {
                    writeln!(
                        out,
                        "  {}",
                        scalar(item).unwrap_or_else(|| item.to_string())
                    )
                    .unwrap();
                }
            } else if let Value::String(s) = v {
                if s.contains('\n') {
                    writeln!(out, "{}:", k.replace('_', " ")).unwrap();
                    for line in s.lines() {
                        writeln!(out, "  {line}").unwrap();
                    }
                }
            }
        }
        if let Some(basis) = &self.basis {
            writeln!(out, "basis ({}):", basis.len()).unwrap();
            for b in basis {
                writeln!(out, "  {b}").unwrap();
            }
        }
        out
    }
}

/// Single-line rendering of scalar JSON values.
fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        _ => None,
    }
}
