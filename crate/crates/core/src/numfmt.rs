//! Significant-digit rounding for serialized output.

use std::collections::BTreeMap;

use serde::Serializer;

/// Rounds to `digits` significant decimal digits. The result prints with
/// at most that many digits through the shortest round-trip formatter.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

/// Number of significant digits used in JSON output.
pub const JSON_DIGITS: usize = 9;
/// Number of significant digits used in CSV output.
pub const CSV_DIGITS: usize = 6;

/// Plain decimal for magnitudes in `[1e-4, 1e6)`, scientific otherwise.
pub fn csv_cell(x: f64) -> String {
    let r = round_sig(x, CSV_DIGITS);
    if r == 0.0 || !r.is_finite() || (1e-4..1e6).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Rounds every number in a JSON tree to [`JSON_DIGITS`] significant digits.
/// Integers are left alone.
pub fn round_json(v: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64"), JSON_DIGITS);
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

pub(crate) fn ser_map_9<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &round_sig(*v, JSON_DIGITS))?;
    }
    map.end()
}
