//! Directory runs: every `*.json` job (reports excluded) in filename order.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use super::jobs::{run_job_file, JobOptions, EXIT_OK};
use super::VerifyError;
use crate::par::Execution;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatchRow {
    pub case: String,
    pub kind: String,
    pub exit: i32,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub hypotheses: String,
    pub verdict: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BatchSummary {
    pub rows: Vec<BatchRow>,
    /// Largest per-file exit code; `0` for an empty directory.
    pub exit: i32,
}

const REPORT_SUFFIX: &str = ".report.json";

fn job_files(dir: &Path) -> Result<Vec<PathBuf>, VerifyError> {
    let io = |e: std::io::Error| VerifyError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
        if path.is_file() && name.ends_with(".json") && !name.ends_with(REPORT_SUFFIX) && name != "summary.json" {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn class_text(v: &Value) -> Option<String> {
    let coeffs: Vec<i64> = serde_json::from_value(v.clone()).ok()?;
    crate::chow::ChowClass::new(coeffs).ok().map(|c| c.to_string())
}

fn row(case: String, report: &Value, exit: i32) -> BatchRow {
    let s = |v: &Value| v.as_str().map(str::to_string);
    let kind = s(&report["kind"]).unwrap_or_else(|| {
        if report.get("lhs").is_some() {
            "verify-arrangement".into()
        } else {
            "-".into()
        }
    });
    let hypotheses = match (
        report["hypotheses"]["free"]["status"].as_str(),
        report["hypotheses"]["linear_type"]["status"].as_str(),
    ) {
        (Some(f), Some(l)) => format!("free: {f}, linear type: {l}"),
        _ => report
            .get("free")
            .and_then(|f| f["status"].as_str())
            .map(|f| format!("free: {f}"))
            .unwrap_or_else(|| "-".into()),
    };
    let verdict = s(&report["verdict"])
        .or_else(|| s(&report["status"]))
        .unwrap_or_else(|| {
            if exit == EXIT_OK {
                "ok".into()
            } else {
                format!("exit {exit}")
            }
        });
    BatchRow {
        case,
        kind,
        exit,
        lhs: class_text(&report["lhs"]),
        rhs: class_text(&report["rhs"]),
        hypotheses,
        verdict,
    }
}

/// Runs every job in `dir` (concurrently under `execution`) and writes
/// `<stem>.report.json` next to each job, or into `out_dir` when given.
pub fn batch_verify(dir: &Path, out_dir: Option<&Path>, execution: Execution) -> Result<BatchSummary, VerifyError> {
    let files = job_files(dir)?;
    let target = out_dir.unwrap_or(dir);
    if out_dir.is_some() {
        std::fs::create_dir_all(target).map_err(|e| VerifyError::Io {
            path: target.display().to_string(),
            message: e.to_string(),
        })?;
    }
    let rows = execution.map(&files, |path| {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("job").to_string();
        let out = target.join(format!("{stem}{REPORT_SUFFIX}"));
        // jobs inside a batch run sequentially; the batch itself is the parallel axis
        let outcome = run_job_file(path, Some(&out), JobOptions::default(), Execution::Sequential);
        row(stem, &outcome.report, outcome.exit)
    });
    let exit = rows.iter().map(|r| r.exit).max().unwrap_or(EXIT_OK);
    Ok(BatchSummary { rows, exit })
}

impl fmt::Display for BatchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dash = || "-".to_string();
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.case.clone(),
                    r.lhs.clone().unwrap_or_else(dash),
                    r.rhs.clone().unwrap_or_else(dash),
                    r.hypotheses.clone(),
                    r.verdict.clone(),
                    r.exit.to_string(),
                ]
            })
            .collect();
        let header = ["case", "lhs", "rhs", "hypotheses", "verdict", "exit"].map(String::from);
        let mut widths = header.clone().map(|h| h.chars().count());
        for c in &cells {
            for (w, s) in widths.iter_mut().zip(c) {
                *w = (*w).max(s.chars().count());
            }
        }
        for line in std::iter::once(&header).chain(&cells) {
            let padded: Vec<String> = line
                .iter()
                .zip(widths)
                .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                .collect();
            writeln!(f, "{}", padded.join("  ").trim_end())?;
        }
        write!(f, "{} jobs, exit {}", self.rows.len(), self.exit)
    }
}
