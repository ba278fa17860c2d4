//! Deterministic report rendering.
//!
//! JSON is the canonical output: compact, object fields in declaration
//! order, and every floating-point number written with 17 significant
//! digits so the exact IEEE double survives a parse round trip.
//! Non-finite values have no JSON representation; they arrive here as
//! `Value::Null` (serde_json maps them to null during conversion) and are
//! emitted as `null`.  CSV is a lossy flat projection for plotting; its
//! floats use the same fixed format, with infinities spelled out.

use serde_json::Value;
use std::fmt::Write;

/// Render a JSON value compactly with fixed-precision numbers.
pub fn render_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out
}

fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                write!(out, "{u}").expect("write to string");
            } else if let Some(i) = n.as_i64() {
                write!(out, "{i}").expect("write to string");
            } else {
                let x = n.as_f64().expect("a JSON number is u64, i64, or f64");
                write!(out, "{x:.16e}").expect("write to string");
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("strings always serialize"));
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(fields) => {
            out.push('{');
            for (i, (key, item)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("strings always serialize"));
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

/// CSV cell for a float: 17 significant digits, `inf`/`NaN` spelled out.
pub fn csv_f64(x: f64) -> String {
    format!("{x:.16e}")
}
