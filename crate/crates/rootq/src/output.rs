//! Report assembly and the JSON / CSV writers.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{self, Write};

use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

pub fn version() -> String {
    format!("rootq {}", rootq_core::VERSION)
}

/// `{config, spec, results, version}`; object keys come out sorted.
pub fn report(cfg: &RunConfig, spec: Value, results: Vec<Value>) -> Value {
    json!({
        "config": cfg.to_json(),
        "spec": spec,
        "results": results,
        "version": version(),
    })
}

pub fn render(cfg: &RunConfig, report: &Value) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_rows(
            report["results"]
                .as_array()
                .map(Vec::as_slice)
                .unwrap_or(&[]),
        ),
    }
}

/// One row per result; nested objects become dotted columns, arrays stay JSON.
fn csv_rows(rows: &[Value]) -> Result<String, CliError> {
    let flat: Vec<BTreeMap<String, String>> = rows
        .iter()
        .map(|r| {
            let mut m = BTreeMap::new();
            flatten("", r, &mut m);
            m
        })
        .collect();
    let columns: BTreeSet<&String> = flat.iter().flat_map(|m| m.keys()).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record(columns.iter().map(|c| c.as_str()))
        .map_err(internal)?;
    for m in &flat {
        w.write_record(
            columns
                .iter()
                .map(|c| m.get(*c).map(String::as_str).unwrap_or("")),
        )
        .map_err(internal)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

fn flatten(prefix: &str, v: &Value, out: &mut BTreeMap<String, String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Null => {
            out.insert(prefix.to_string(), String::new());
        }
        Value::String(s) => {
            out.insert(prefix.to_string(), s.clone());
        }
        other => {
            out.insert(prefix.to_string(), other.to_string());
        }
    }
}

pub fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Internal(e.to_string()))
        }
    }
}
