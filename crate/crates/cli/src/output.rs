use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::{CliError, SPEC_VERSION};

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-4, 1e15)` so tiny residuals stay short.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub(crate) fn csv_bytes<const N: usize>(
    header: &[&str],
    rows: impl IntoIterator<Item = [f64; N]>,
) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Io {
        path: "<csv buffer>".into(),
        source: std::io::Error::other(e),
    };
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row.iter().map(|v| format_number(*v)))
            .map_err(fail)?;
    }
    w.into_inner().map_err(|e| CliError::Io {
        path: "<csv buffer>".into(),
        source: std::io::Error::other(e.to_string()),
    })
}

/// Wraps a summary object with `spec_version` and `scenario` keys.
pub(crate) fn json_bytes(scenario: &str, body: &impl Serialize) -> Result<Vec<u8>, CliError> {
    let mut doc = Map::new();
    doc.insert("spec_version".into(), json!(SPEC_VERSION));
    doc.insert("scenario".into(), json!(scenario));
    match serde_json::to_value(body).expect("summaries serialize") {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    let mut bytes = serde_json::to_vec_pretty(&Value::Object(doc)).expect("values serialize");
    bytes.push(b'\n');
    Ok(bytes)
}

/// Machine-readable error document printed on failure.
pub fn error_json(err: &CliError) -> String {
    let mut doc = json!({
        "spec_version": SPEC_VERSION,
        "kind": err.kind(),
        "module": err.module(),
        "message": err.to_string(),
    });
    match err {
        CliError::Module(e) => {
            doc["error"] = json!(e.kind());
        }
        CliError::InvalidConfig { key, .. } => {
            doc["parameter"] = json!(key);
        }
        CliError::Io { path, .. } => {
            doc["path"] = json!(path);
        }
    }
    doc.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, 1.0, -2.5, 1e-20, 3.3e20, 0.1 + 0.2, 12345.678] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_number(1e-20), "1e-20");
        assert_eq!(format_number(0.25), "0.25");
    }

    #[test]
    fn csv_has_header_and_rows() {
        let bytes = csv_bytes(&["a", "b"], [[1.0, 2.0], [3.0, 1e-9]]).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap(), "a,b\n1,2\n3,1e-9\n");
    }

    #[test]
    fn json_carries_version() {
        let v: Value = serde_json::from_slice(&json_bytes("x", &json!({"k": 1})).unwrap()).unwrap();
        assert_eq!(v["spec_version"], SPEC_VERSION);
        assert_eq!(v["scenario"], "x");
        assert_eq!(v["k"], 1);
    }

    #[test]
    fn error_documents_name_module_and_kind() {
        let e = CliError::from(aps_spin::Error::NotUnit { norm: 2.0 });
        let v: Value = serde_json::from_str(&error_json(&e)).unwrap();
        assert_eq!(v["kind"], "ModuleError");
        assert_eq!(v["error"], "NotUnit");
        assert_eq!(v["module"], e.module());
        let e = CliError::InvalidConfig {
            key: "theta".into(),
            reason: "bad".into(),
        };
        let v: Value = serde_json::from_str(&error_json(&e)).unwrap();
        assert_eq!(
            (v["kind"].as_str(), v["module"].as_str()),
            (Some("InvalidConfig"), Some("cli_io"))
        );
    }
}
