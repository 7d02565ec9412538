use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Output of one command. `results` is a deterministic function of the
/// parameters and seed; `timing_ms` is the only field that varies between
/// identical runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub threads: usize,
    pub passed: bool,
    pub results: Value,
    /// Per-item rows for tabular output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Value>>,
    pub timing_ms: u64,
    pub versions: BTreeMap<String, String>,
}

pub(crate) fn versions() -> BTreeMap<String, String> {
    BTreeMap::from([("nearortho".to_string(), env!("CARGO_PKG_VERSION").to_string())])
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(self).expect("report serialises")),
            OutputFormat::Text => self.render_text(),
            OutputFormat::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!(
            "command: {}\npassed: {}\nseed: {}\n",
            self.command,
            self.passed,
            self.seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into())
        );
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                out.push_str(&format!("{k}: {}\n", cell(v)));
            }
        } else {
            out.push_str(&format!("results: {}\n", cell(&self.results)));
        }
        out.push_str(&format!("timing_ms: {}\n", self.timing_ms));
        out
    }

    /// The table rows when the command has them, otherwise `key,value`
    /// pairs of the results.
    fn render_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        match self.table.as_deref() {
            Some(rows) if !rows.is_empty() => {
                let header: Vec<String> = match &rows[0] {
                    Value::Object(m) => m.keys().cloned().collect(),
                    _ => vec!["value".into()],
                };
                writer.write_record(&header).expect("in-memory write");
                for row in rows {
                    let record: Vec<String> = match row {
                        Value::Object(m) => header.iter().map(|k| m.get(k).map(cell).unwrap_or_default()).collect(),
                        other => vec![cell(other)],
                    };
                    writer.write_record(&record).expect("in-memory write");
                }
            }
            _ => {
                writer.write_record(["key", "value"]).expect("in-memory write");
                if let Value::Object(map) = &self.results {
                    for (k, v) in map {
                        writer.write_record([k.as_str(), &cell(v)]).expect("in-memory write");
                    }
                }
            }
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
    }
}
