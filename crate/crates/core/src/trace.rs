//! Canonical JSON traces: sorted keys, two-space indentation, a trailing
//! newline, and no floating-point numbers.

use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace is not valid JSON: {0}")]
    Json(String),
    #[error("trace contains a non-integer number at {0}")]
    Float(String),
    #[error("traces differ at {path}{}: expected {expected}, found {actual}", .record.map(|r| format!(" (record {r})")).unwrap_or_default())]
    Mismatch { record: Option<usize>, path: String, expected: String, actual: String },
}

/// Canonical text of a document. `serde_json` maps are ordered by key.
pub fn canonical_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn check_numbers(v: &Value, path: &mut String) -> Result<(), TraceError> {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => Err(TraceError::Float(path.clone())),
        Value::Array(items) => items.iter().enumerate().try_for_each(|(i, x)| {
            let len = path.len();
            path.push_str(&format!("[{i}]"));
            check_numbers(x, path)?;
            path.truncate(len);
            Ok(())
        }),
        Value::Object(map) => map.iter().try_for_each(|(k, x)| {
            let len = path.len();
            path.push('.');
            path.push_str(k);
            check_numbers(x, path)?;
            path.truncate(len);
            Ok(())
        }),
        _ => Ok(()),
    }
}

pub fn parse_trace(text: &str) -> Result<Value, TraceError> {
    let v: Value = serde_json::from_str(text).map_err(|e| TraceError::Json(e.to_string()))?;
    check_numbers(&v, &mut String::from("$"))?;
    Ok(v)
}

/// Re-serialize `text` canonically.
pub fn canonicalize(text: &str) -> Result<String, TraceError> {
    Ok(canonical_text(&parse_trace(text)?))
}

fn short(v: Option<&Value>) -> String {
    match v {
        None => "nothing".into(),
        Some(v) => {
            let s = v.to_string();
            if s.chars().count() > 120 {
                format!("{}…", s.chars().take(120).collect::<String>())
            } else {
                s
            }
        }
    }
}

fn first_difference(a: &Value, b: &Value, path: &mut Vec<String>) -> Option<(Vec<String>, Option<Value>, Option<Value>)> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => {
                        path.push(format!(".{k}"));
                        if let Some(d) = first_difference(u, v, path) {
                            return Some(d);
                        }
                        path.pop();
                    }
                    (u, v) => {
                        let mut p = path.clone();
                        p.push(format!(".{k}"));
                        return Some((p, u.cloned(), v.cloned()));
                    }
                }
            }
            None
        }
        (Value::Array(x), Value::Array(y)) => {
            for i in 0..x.len().max(y.len()) {
                match (x.get(i), y.get(i)) {
                    (Some(u), Some(v)) => {
                        path.push(format!("[{i}]"));
                        if let Some(d) = first_difference(u, v, path) {
                            return Some(d);
                        }
                        path.pop();
                    }
                    (u, v) => {
                        let mut p = path.clone();
                        p.push(format!("[{i}]"));
                        return Some((p, u.cloned(), v.cloned()));
                    }
                }
            }
            None
        }
        _ if a == b => None,
        _ => Some((path.clone(), Some(a.clone()), Some(b.clone()))),
    }
}

/// Compare a trace against a golden one after canonicalizing both. The
/// error points at the first divergent path and the record it belongs to.
pub fn verify_trace(actual: &str, golden: &str) -> Result<(), TraceError> {
    let a = parse_trace(actual)?;
    let g = parse_trace(golden)?;
    if canonical_text(&a) == canonical_text(&g) {
        return Ok(());
    }
    let (path, expected, found) = first_difference(&g, &a, &mut Vec::new()).expect("texts differ");
    let record = match (path.first().map(String::as_str), path.get(1)) {
        (Some(".records"), Some(i)) => i.trim_start_matches('[').trim_end_matches(']').parse().ok(),
        _ => None,
    };
    Err(TraceError::Mismatch {
        record,
        path: format!("${}", path.concat()),
        expected: short(expected.as_ref()),
        actual: short(found.as_ref()),
    })
}
