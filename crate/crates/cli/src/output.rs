use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// Writes `value` in the requested format. `rows`, when given, replaces the
/// value as the CSV table (one object per row).
pub fn emit<T: Serialize, R: Serialize>(format: Format, value: &T, rows: Option<&[R]>) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    let text = match format {
        Format::Json => serde_json::to_string(value).map_err(internal)? + "\n",
        Format::Human => human(&serde_json::to_value(value).map_err(internal)?),
        Format::Csv => match rows {
            Some(rows) => csv_table(&serde_json::to_value(rows).map_err(internal)?)?,
            None => csv_table(&serde_json::to_value(value).map_err(internal)?)?,
        },
    };
    out.write_all(text.as_bytes()).map_err(internal)
}

/// Writes pre-rendered text, used where JSON numbers exceed `f64`.
pub fn emit_raw(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).map_err(internal)
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::usage(format!("cannot write output: {e}"))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn human(v: &Value) -> String {
    let mut pairs = Vec::new();
    flatten("", v, &mut pairs);
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .into_iter()
        .map(|(k, v)| {
            if k.is_empty() {
                format!("{v}\n")
            } else {
                format!("{k:width$}  {v}\n")
            }
        })
        .collect()
}

fn csv_table(v: &Value) -> Result<String, CliError> {
    let rows: Vec<Vec<(String, String)>> = match v {
        Value::Array(items) => items
            .iter()
            .map(|x| {
                let mut pairs = Vec::new();
                flatten("", x, &mut pairs);
                pairs
            })
            .collect(),
        other => {
            let mut pairs = Vec::new();
            flatten("", other, &mut pairs);
            vec![pairs]
        }
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        w.write_record(first.iter().map(|(k, _)| k)).map_err(internal)?;
    }
    for row in &rows {
        w.write_record(row.iter().map(|(_, v)| v)).map_err(internal)?;
    }
    String::from_utf8(w.into_inner().map_err(internal)?).map_err(internal)
}
