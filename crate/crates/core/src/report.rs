//! Discovery reports in JSON, CSV and plain text.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evalstats::SubgroupReport;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub input: String,
    pub target: String,
    pub rows: usize,
    pub dropped_rows: usize,
    pub propositions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub objective: String,
    pub language: String,
    pub estimator: String,
    pub approximation: f64,
    pub depth_limit: Option<usize>,
    pub top_k: usize,
    pub cuts: usize,
    pub binning: String,
    pub delta: f64,
}

/// Population statistics: size, median and mean absolute deviation from the median.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalSummary {
    pub size: usize,
    pub median: f64,
    pub amd: f64,
    pub mean: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub nodes_expanded: usize,
    pub nodes_enqueued: usize,
    pub nodes_pruned: usize,
    pub wall_time_seconds: f64,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscoveryReport {
    pub dataset: DatasetSummary,
    pub run: RunSummary,
    pub global: GlobalSummary,
    pub subgroups: Vec<SubgroupReport>,
    pub search: SearchSummary,
}

/// Column order of [`DiscoveryReport::to_csv`].
pub const CSV_COLUMNS: [&str; 12] = [
    "rank",
    "selector",
    "value",
    "size",
    "coverage",
    "median",
    "amd",
    "mean",
    "variance",
    "epsilon",
    "lcb",
    "lcb_score",
];

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

impl DiscoveryReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::Invariant(format!("report serialization failed: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("malformed report: {e}")))
    }

    /// One row per subgroup in the order of [`CSV_COLUMNS`].
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS)?;
        for (i, s) in self.subgroups.iter().enumerate() {
            w.write_record([
                (i + 1).to_string(),
                s.selector.clone(),
                s.value.to_string(),
                s.size.to_string(),
                s.coverage.to_string(),
                s.median.to_string(),
                s.amd.to_string(),
                s.mean.to_string(),
                opt(s.variance),
                opt(s.epsilon),
                opt(s.lcb),
                opt(s.lcb_score),
            ])?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Invariant(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let g = &self.global;
        let _ = writeln!(
            out,
            "{} rows of `{}` from {} ({} dropped), {} propositions",
            self.dataset.rows,
            self.dataset.target,
            self.dataset.input,
            self.dataset.dropped_rows,
            self.dataset.propositions
        );
        let _ = writeln!(
            out,
            "global: |P| = {}  med = {}  amd = {:.4}  mean = {:.4}",
            g.size, g.median, g.amd, g.mean
        );
        let r = &self.run;
        let _ = writeln!(
            out,
            "objective {} over {} with {} estimator, a = {}, depth {}, top {}",
            r.objective,
            r.language,
            r.estimator,
            r.approximation,
            r.depth_limit
                .map_or_else(|| "unlimited".to_owned(), |d| d.to_string()),
            r.top_k
        );
        for (i, s) in self.subgroups.iter().enumerate() {
            let score = s
                .lcb_score
                .map_or_else(|| "n/a".to_owned(), |v| format!("{v:.4}"));
            let _ = writeln!(
                out,
                "{:>3}. {:.6}  {}\n     size {} ({:.3})  med {}  amd {:.4}  mean {:.4}  lcb score {}",
                i + 1,
                s.value,
                s.selector,
                s.size,
                s.coverage,
                s.median,
                s.amd,
                s.mean,
                score
            );
        }
        let s = &self.search;
        let _ = writeln!(
            out,
            "search: {} expanded, {} enqueued, {} pruned, {:.3}s{}",
            s.nodes_expanded,
            s.nodes_enqueued,
            s.nodes_pruned,
            s.wall_time_seconds,
            if s.complete { "" } else { " (incomplete)" }
        );
        out
    }

    pub fn write<W: Write>(&self, format: OutputFormat, mut out: W) -> Result<()> {
        let text = match format {
            OutputFormat::Json => self.to_json()? + "\n",
            OutputFormat::Csv => self.to_csv()?,
            OutputFormat::Text => self.to_text(),
        };
        out.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: "<output>".into(),
            source,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}
