use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// `{schema_version, command, ...body}`.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), SCHEMA_VERSION.into());
    m.insert("command".into(), command.into());
    match body {
        Value::Object(b) => m.extend(b),
        other => {
            m.insert("result".into(), other);
        }
    }
    Value::Object(m)
}

pub fn write_text(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn write_json(out: Option<&Path>, command: &str, body: Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&envelope(command, body)).expect("plain JSON");
    text.push('\n');
    write_text(out, &text)
}

/// 17 significant digits, `.` decimal separator.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn int_rows(m: &hyperheat::IntMatrix) -> Value {
    serde_json::to_value(m.to_rows()).expect("integers serialise")
}

pub fn real_rows(m: &hyperheat::Matrix<f64>) -> Value {
    serde_json::to_value(m.to_rows()).expect("finite floats serialise")
}
