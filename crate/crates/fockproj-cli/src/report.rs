//! The machine-readable report envelope shared by all subcommands.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Every invocation emits exactly one report on stdout. Inputs are echoed
/// verbatim (exact rational strings stay exact), outputs are
/// operation-specific, and `provenance` names the governing results.
#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Value,
    pub provenance: Vec<String>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            inputs: BTreeMap::new(),
            outputs: Value::Null,
            provenance: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn print_json(&self) {
        println!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
    }

    /// Flat `key,value` CSV of the inputs and scalar outputs.
    pub fn print_csv(&self) {
        println!("key,value");
        for (k, v) in &self.inputs {
            println!("input.{k},{}", csv_escape(v));
        }
        flatten_value("output", &self.outputs);
        for w in &self.warnings {
            println!("warning,{}", csv_escape(w));
        }
    }
}

fn flatten_value(prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten_value(&format!("{prefix}.{k}"), inner);
            }
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                flatten_value(&format!("{prefix}[{i}]"), inner);
            }
        }
        other => {
            let s = match other {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            println!("{prefix},{}", csv_escape(&s));
        }
    }
}

pub fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
