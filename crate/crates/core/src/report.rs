//! The shared machine-readable report format.
//!
//! A report file is a JSON array of entries. Every entry carries a
//! `"report"` tag (`cut`, `lemma` or `kappa`) followed by the fields of the
//! corresponding result type in declaration order. Edges are `[u, v]` pairs
//! with `u < v`, ascending; vertex sets are ascending vertex lists.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kappa::KappaReport;
use crate::lemma::LemmaVerdict;
use crate::solver::{CutReport, LambdaOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "snake_case")]
pub enum Report {
    Cut(LambdaOutcome),
    Lemma(LemmaVerdict),
    Kappa(KappaReport),
    /// A cut search stopped by its budget, with the best cut found so far.
    Incomplete(IncompleteCut),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncompleteCut {
    pub h: usize,
    pub budget: Duration,
    pub elapsed: Duration,
    pub best: Option<CutReport>,
}

impl From<LambdaOutcome> for Report {
    fn from(o: LambdaOutcome) -> Self {
        Report::Cut(o)
    }
}

impl From<LemmaVerdict> for Report {
    fn from(v: LemmaVerdict) -> Self {
        Report::Lemma(v)
    }
}

impl From<KappaReport> for Report {
    fn from(r: KappaReport) -> Self {
        Report::Kappa(r)
    }
}

/// A JSON array with one compact entry per line, newline-terminated.
pub fn write_reports(reports: &[Report]) -> String {
    let lines: Vec<String> = reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("reports are serializable"))
        .collect();
    if lines.is_empty() {
        return "[]\n".into();
    }
    format!("[\n{}\n]\n", lines.join(",\n"))
}

pub fn parse_reports(text: &str) -> Result<Vec<Report>> {
    Ok(serde_json::from_str(text)?)
}
