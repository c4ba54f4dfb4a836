//! Flat key/value records shared by the CSV and JSON writers.

use std::io::Write;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// A report that can be written as one CSV row or one flat JSON object with
/// the same keys in the same order.
pub trait FlatRecord {
    fn fields(&self) -> Vec<(&'static str, Value)>;

    fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in self.fields() {
            map.insert(k.to_string(), v);
        }
        Value::Object(map)
    }
}

pub(crate) fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub(crate) fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Write `rows` as CSV with a header taken from the first row.
pub fn write_csv<W: Write, R: FlatRecord>(out: W, rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::InvalidInput(format!("csv write failed: {e}"));
    if let Some(first) = rows.first() {
        w.write_record(first.fields().iter().map(|(k, _)| *k)).map_err(io)?;
    }
    for row in rows {
        w.write_record(row.fields().iter().map(|(_, v)| cell(v))).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::InvalidInput(format!("csv flush failed: {e}")))?;
    Ok(())
}
