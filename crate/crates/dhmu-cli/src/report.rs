//! Report artifacts: one schema, two emissions.
//!
//! JSON numbers round-trip through serde's shortest representation; CSV
//! prints 17 significant digits, which also round-trips doubles exactly.
//! Both carry the same values, the tool version, and the resolved inputs
//! so a run can be reproduced from its own report.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct Label {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    pub labels: Vec<Label>,
    pub metrics: Vec<Metric>,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value) -> Self {
        Self {
            tool: "dhmu",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs,
            passed: None,
            labels: Vec::new(),
            metrics: Vec::new(),
        }
    }

    pub fn metric(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.push(Metric {
            name: name.into(),
            value,
        });
    }

    pub fn label(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.labels.push(Label {
            name: name.into(),
            value: value.into(),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,name,value\n");
        out.push_str(&format!("label,tool,{}\n", self.tool));
        out.push_str(&format!("label,version,{}\n", self.version));
        out.push_str(&format!("label,command,{}\n", csv_field(&self.command)));
        if let Some(p) = self.passed {
            out.push_str(&format!("label,passed,{p}\n"));
        }
        for l in &self.labels {
            out.push_str(&format!(
                "label,{},{}\n",
                csv_field(&l.name),
                csv_field(&l.value)
            ));
        }
        for m in &self.metrics {
            out.push_str(&format!("metric,{},{:.16e}\n", csv_field(&m.name), m.value));
        }
        out
    }
}

/// Summary table for corpus sweeps: one row per (measure, scenario).
#[derive(Debug, Serialize)]
pub struct SummaryRow {
    pub measure: String,
    pub scenario: String,
    pub status: String,
    pub metric: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: serde_json::Value,
    pub rows: Vec<SummaryRow>,
}

impl Summary {
    pub fn new(command: &str, inputs: serde_json::Value) -> Self {
        Self {
            tool: "dhmu",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs,
            rows: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serialization")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("measure,scenario,status,metric,value,detail\n");
        for r in &self.rows {
            let value = r.value.map(|v| format!("{v:.16e}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&r.measure),
                csv_field(&r.scenario),
                csv_field(&r.status),
                csv_field(&r.metric),
                value,
                csv_field(r.detail.as_deref().unwrap_or(""))
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Write to the path or stdout.
pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}
