//! Rendering of verb results: JSON as is, or text generated from the JSON.

use clap::ValueEnum;
use serde_json::Value;

use canring::strata::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("values serialize"),
        Format::Text => text(value),
    }
}

fn as_report(value: &Value) -> Option<Report> {
    serde_json::from_value(value.clone()).ok()
}

fn text(value: &Value) -> String {
    if let Some(r) = as_report(value) {
        return r.render_text().trim_end().to_string();
    }
    if let Some(reports) = value.get("reports").and_then(Value::as_array) {
        let parsed: Vec<Report> = reports.iter().filter_map(as_report).collect();
        let mut out: Vec<String> = parsed.iter().map(|r| r.render_text().trim_end().to_string()).collect();
        let failed = parsed.iter().filter(|r| !r.passed()).count();
        out.push(format!("{} reports, {failed} failed", parsed.len()));
        return out.join("\n");
    }
    let mut out = Vec::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            field(&mut out, k, v, "");
        }
    }
    out.join("\n")
}

fn field(out: &mut Vec<String>, key: &str, v: &Value, indent: &str) {
    match v {
        Value::String(s) if s.contains('\n') => {
            out.push(format!("{indent}{key}:"));
            out.extend(s.trim_end().lines().map(|l| format!("{indent}  {l}")));
        }
        Value::String(s) => out.push(format!("{indent}{key}: {s}")),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push(format!("{indent}{key}: {}", joined.join(" ")));
        }
        Value::Array(items) => {
            out.push(format!("{indent}{key}:"));
            for item in items {
                match item {
                    Value::Object(m) => {
                        let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect();
                        out.push(format!("{indent}  {}", parts.join("  ")));
                    }
                    other => out.push(format!("{indent}  {}", scalar(other))),
                }
            }
        }
        Value::Object(m) => {
            out.push(format!("{indent}{key}:"));
            let deeper = format!("{indent}  ");
            for (k, v) in m {
                field(out, k, v, &deeper);
            }
        }
        other => out.push(format!("{indent}{key}: {}", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
