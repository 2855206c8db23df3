//! Report rendering and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::Failure;

/// A rendered report: a JSON document, or a table with a header row.
pub enum Report {
    Json(serde_json::Value),
    Table {
        header: Vec<&'static str>,
        rows: Vec<Vec<String>>,
    },
}

impl Report {
    pub fn json<T: Serialize>(value: &T) -> Result<Report, Failure> {
        serde_json::to_value(value)
            .map(Report::Json)
            .map_err(|e| Failure::Input(e.to_string()))
    }

    pub fn render_json(&self) -> Result<String, Failure> {
        match self {
            Report::Json(v) => {
                let mut s =
                    serde_json::to_string_pretty(v).map_err(|e| Failure::Input(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Report::Table { header, rows } => {
                let records: Vec<serde_json::Map<String, serde_json::Value>> = rows
                    .iter()
                    .map(|r| {
                        header
                            .iter()
                            .zip(r)
                            .map(|(h, c)| (h.to_string(), cell_value(c)))
                            .collect()
                    })
                    .collect();
                Report::Json(serde_json::Value::from(
                    records
                        .into_iter()
                        .map(serde_json::Value::Object)
                        .collect::<Vec<_>>(),
                ))
                .render_json()
            }
        }
    }

    pub fn render_csv(&self) -> Result<String, Failure> {
        match self {
            Report::Json(_) => Err(Failure::Input(
                "this command has no csv form; use --format json".into(),
            )),
            Report::Table { header, rows } => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Failure::Input(e.to_string());
                w.write_record(header).map_err(io)?;
                for r in rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Failure::Input(e.to_string()))
            }
        }
    }
}

fn cell_value(c: &str) -> serde_json::Value {
    if let Ok(b) = c.parse::<bool>() {
        return b.into();
    }
    match c.parse::<f64>() {
        Ok(x) if x.is_finite() => serde_json::Number::from_f64(x)
            .map(Into::into)
            .unwrap_or_else(|| c.into()),
        _ => c.into(),
    }
}

/// Writes `text` to `path` through a temporary file in the same directory,
/// so readers never see a partial report; without a path, to stdout.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Input(format!("cannot write report: {e}"));
    match path {
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(p).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}
