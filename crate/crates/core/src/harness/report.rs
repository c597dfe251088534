//! Experiment reports: a deterministic JSON body plus timing, and CSV
//! export of the witness table.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::fmt_rat;
use crate::error::{Error, Result};
use crate::nf::FieldElement;

/// One row of a witness table; columns are sorted by name.
pub type Witness = BTreeMap<String, String>;

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub pipeline: String,
    pub inputs: Value,
    pub count: Option<usize>,
    pub witnesses: Vec<Witness>,
    pub ceiling: Option<String>,
    pub height_bound: Option<u64>,
    pub steps: Option<usize>,
    pub truncated: bool,
    pub details: Value,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ExperimentReport {
    pub fn new(pipeline: &str, inputs: Value) -> Self {
        Self {
            pipeline: pipeline.into(),
            inputs,
            count: None,
            witnesses: Vec::new(),
            ceiling: None,
            height_bound: None,
            steps: None,
            truncated: false,
            details: Value::Null,
            warnings: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Everything except timing; identical for identical configs.
    pub fn comparable_body(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.comparable_body();
        v["timing"] = json!({ "seconds": self.elapsed.as_secs_f64() });
        v
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidInput(format!("{}: {e}", path.display()));
        let columns: BTreeSet<&String> = self.witnesses.iter().flat_map(|w| w.keys()).collect();
        let mut out = csv::Writer::from_path(path).map_err(io)?;
        out.write_record(&columns).map_err(io)?;
        for w in &self.witnesses {
            out.write_record(
                columns
                    .iter()
                    .map(|c| w.get(*c).map(String::as_str).unwrap_or("")),
            )
            .map_err(io)?;
        }
        out.flush()
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
    }
}

/// `"n/d"` for rationals, `"[a, b, ...]"` for other field elements.
pub fn element_text(x: &FieldElement) -> String {
    match x.as_rational() {
        Some(q) => fmt_rat(q),
        None => format!("[{}]", x.to_strings().join(", ")),
    }
}

pub fn witness<const N: usize>(cells: [(&str, String); N]) -> Witness {
    cells.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
