//! CSV tables, tagged numeric results and the JSON summary.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::config::{CliError, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// 17 significant digits: round-trips every f64.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(file: impl Into<String>, columns: &[&str]) -> Self {
        Self { file: file.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width in {}", self.file);
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => fmt_num(*x),
                    Cell::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
                    Cell::Text(t) => t.clone(),
                })
                .collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

/// Where a reported number comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// A closed form stated in the source literature.
    PaperFormula,
    /// An independent oracle derived for this lab.
    DerivedOracle,
    /// A computed quantity.
    Measured,
}

/// How `value` is judged against `reference`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Absolute,
    Relative,
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultEntry {
    pub name: String,
    pub provenance: Provenance,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_provenance: Option<Provenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl ResultEntry {
    pub fn info(name: impl Into<String>, provenance: Provenance, value: impl Into<Value>) -> Self {
        Self {
            name: name.into(),
            provenance,
            value: value.into(),
            reference: None,
            reference_provenance: None,
            comparison: None,
            tolerance: None,
            pass: None,
        }
    }

    /// A measured number checked against a reference.
    pub fn check(
        name: impl Into<String>,
        value: f64,
        reference: f64,
        reference_provenance: Provenance,
        comparison: Comparison,
        tolerance: f64,
    ) -> Self {
        let pass = match comparison {
            Comparison::Absolute => (value - reference).abs() <= tolerance,
            Comparison::Relative => (value - reference).abs() <= tolerance * reference.abs(),
            Comparison::AtLeast => value >= reference - tolerance,
            Comparison::AtMost => value <= reference + tolerance,
        };
        Self {
            name: name.into(),
            provenance: Provenance::Measured,
            value: num(value),
            reference: Some(reference),
            reference_provenance: Some(reference_provenance),
            comparison: Some(comparison),
            tolerance: Some(tolerance),
            pass: Some(pass),
        }
    }
}

/// JSON number, or `null` when not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, Default)]
pub struct Output {
    pub tables: Vec<Table>,
    pub results: Vec<ResultEntry>,
    /// `(file name, svg text)`.
    pub figures: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub results: Vec<ResultEntry>,
    pub files: Vec<String>,
    pub all_checks_pass: bool,
}

#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub csv_paths: Vec<PathBuf>,
    pub json_summary: PathBuf,
    pub svg_paths: Vec<PathBuf>,
    pub summary: Summary,
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn emit(cfg: &RunConfig, out: Output) -> Result<ReportBundle, CliError> {
    let dir = PathBuf::from(cfg.str("out"));
    fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    let mut csv_paths = Vec::new();
    for t in &out.tables {
        let p = dir.join(&t.file);
        write(&p, &t.to_csv())?;
        files.push(t.file.clone());
        csv_paths.push(p);
    }
    let mut svg_paths = Vec::new();
    for (name, svg) in &out.figures {
        let p = dir.join(name);
        write(&p, svg)?;
        files.push(name.clone());
        svg_paths.push(p);
    }
    let summary_name = format!("{}-summary.json", cfg.command.name());
    files.push(summary_name.clone());
    let summary = Summary {
        tool: "shrinkerlab",
        version: env!("CARGO_PKG_VERSION"),
        command: cfg.command.name().to_string(),
        config: cfg.params.clone(),
        all_checks_pass: out.results.iter().all(|r| r.pass != Some(false)),
        results: out.results,
        files,
    };
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    let json_summary = dir.join(summary_name);
    write(&json_summary, &text)?;
    Ok(ReportBundle { csv_paths, json_summary, svg_paths, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trips_and_quotes() {
        let mut t = Table::new("t.csv", &["x", "name"]);
        t.push(vec![0.1.into(), "torus 2,1".into()]);
        t.push(vec![f64::NAN.into(), "plane".into()]);
        let s = t.to_csv();
        assert_eq!(s, "x,name\n1.0000000000000001e-1,\"torus 2,1\"\nnan,plane\n");
        let back: f64 = "1.0000000000000001e-1".parse().unwrap();
        assert_eq!(back, 0.1);
    }

    #[test]
    fn checks_judge_their_comparison() {
        let r = ResultEntry::check("a", 1.05, 1.0, Provenance::PaperFormula, Comparison::Absolute, 0.1);
        assert_eq!(r.pass, Some(true));
        let r = ResultEntry::check("a", 1.05, 1.0, Provenance::PaperFormula, Comparison::Relative, 0.01);
        assert_eq!(r.pass, Some(false));
        let r = ResultEntry::check("a", 6.9, 6.8, Provenance::DerivedOracle, Comparison::AtLeast, 0.0);
        assert_eq!(r.pass, Some(true));
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"provenance\":\"measured\"") && j.contains("derived-oracle"));
    }
}
