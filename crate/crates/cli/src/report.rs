//! Report records and their line-delimited JSON and text renderings.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use subsetfpt_core::{ElementSet, Ratio};

/// One run of one command on one instance. Element ids are 1-based, as in
/// the input files.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunRecord {
    pub record: &'static str,
    pub instance: usize,
    pub source: String,
    pub problem: String,
    /// The problem the outcome answers for: Π, or D-Π for `dual`.
    pub label: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground: Option<usize>,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prune: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guarantee: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_expanded: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_arity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optima_checked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersecting_optimum: Option<Vec<usize>>,
    /// Exhaustive optimum of the problem the command answers for.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achieved_ratio: Option<f64>,
    /// Whether the run met its guarantee against `opt`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_bound: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunRecord {
    pub fn new(command: &'static str) -> Self {
        RunRecord {
            record: "run",
            command,
            ..Default::default()
        }
    }
}

/// Summary of all rows sharing one configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateRecord {
    pub record: &'static str,
    pub command: &'static str,
    pub config: String,
    pub rows: usize,
    pub errors: usize,
    pub checked: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_ratio: Option<f64>,
}

pub fn ids(s: ElementSet) -> Vec<usize> {
    s.iter().map(|e| e + 1).collect()
}

pub fn show_ratio(r: &Ratio) -> String {
    r.to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn to_object<T: Serialize>(item: &T) -> Map<String, Value> {
    match serde_json::to_value(item).expect("records serialize") {
        Value::Object(map) => map,
        _ => unreachable!("records are structs"),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// Aligned table over the union of fields, in first-seen order.
fn table(rows: &[Map<String, Value>]) -> String {
    let mut columns: Vec<&str> = Vec::new();
    for row in rows {
        for key in row.keys() {
            if key != "record" && !columns.contains(&key.as_str()) {
                columns.push(key);
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| columns.iter().map(|c| row.get(*c).map_or("-".into(), cell)).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let line = |out: &mut String, items: Vec<&str>| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(&mut out, columns.clone());
    for row in &cells {
        line(&mut out, row.iter().map(String::as_str).collect());
    }
    out
}

pub fn render(runs: &[RunRecord], aggregates: &[AggregateRecord], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in runs {
                writeln!(out, "{}", serde_json::to_string(r).expect("records serialize")).unwrap();
            }
            for a in aggregates {
                writeln!(out, "{}", serde_json::to_string(a).expect("records serialize")).unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            if !runs.is_empty() {
                out.push_str(&table(&runs.iter().map(to_object).collect::<Vec<_>>()));
            }
            if !aggregates.is_empty() {
                if !out.is_empty() {
                    out.push('\n');
                }
                out.push_str(&table(&aggregates.iter().map(to_object).collect::<Vec<_>>()));
            }
            out
        }
    }
}
