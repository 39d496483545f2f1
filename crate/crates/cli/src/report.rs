//! Report rows and their JSON-lines, CSV and text renderings.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
}

/// One grid cell. `params` is a sorted map, so serialization is stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub identity: String,
    pub params: Map<String, Value>,
    pub status: RowStatus,
    pub metric: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.status == RowStatus::Pass
    }
}

/// Builds a params map from `(key, value)` pairs.
#[macro_export]
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = serde_json::Map::new();
        $(m.insert($k.to_string(), serde_json::json!($v));)*
        m
    }};
}

pub fn write_rows<W: Write>(out: &mut W, rows: &[Row], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for row in rows {
                serde_json::to_writer(&mut *out, row)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "identity",
                "params",
                "status",
                "metric",
                "tolerance",
                "seed",
                "witness",
            ])?;
            for row in rows {
                w.write_record([
                    row.identity.clone(),
                    Value::Object(row.params.clone()).to_string(),
                    status_str(row.status).to_string(),
                    row.metric.to_string(),
                    row.tolerance.to_string(),
                    row.seed.map(|s| s.to_string()).unwrap_or_default(),
                    row.witness
                        .as_ref()
                        .map(Value::to_string)
                        .unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for row in rows {
                let params: Vec<String> =
                    row.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(
                    out,
                    "{} {} {} metric={:e} tol={:e}",
                    status_str(row.status).to_uppercase(),
                    row.identity,
                    params.join(" "),
                    row.metric,
                    row.tolerance
                )?;
                if let Some(seed) = row.seed {
                    write!(out, " seed={seed}")?;
                }
                if let Some(w) = &row.witness {
                    write!(out, " witness={w}")?;
                }
                writeln!(out)?;
            }
        }
    }
    out.flush()
}

fn status_str(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Pass => "pass",
        RowStatus::Fail => "fail",
    }
}
