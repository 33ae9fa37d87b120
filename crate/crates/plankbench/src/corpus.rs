//! Regression corpus: checked-in experiment cases diffed against golden CSVs.
//!
//! A case is `<name>.json`:
//!
//! ```json
//! {"kind": "bang", "seed": 1, "spec": {...}, "tolerances": {"default": 1e-9, "slack": 1e-7}}
//! ```
//!
//! with its golden table in `<name>.csv`. Numeric cells match when they differ
//! by at most the column tolerance; other cells must be equal.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Deserialize;

use crate::{run_experiment, HarnessError, Kind, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseFile {
    kind: String,
    #[serde(default)]
    seed: Option<u64>,
    spec: serde_json::Value,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CaseStatus {
    Match,
    Blessed,
    Diff(Vec<String>),
    MissingGolden,
    Violation(Vec<String>),
    Error(String),
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub name: String,
    pub status: CaseStatus,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct CorpusSummary {
    pub cases: Vec<CaseResult>,
    pub elapsed: Duration,
}

impl CorpusSummary {
    /// 0 when every case matched, 1 if any case failed to run, else 2.
    pub fn exit_code(&self) -> i32 {
        let mut code = 0;
        for c in &self.cases {
            match c.status {
                CaseStatus::Match | CaseStatus::Blessed => {}
                CaseStatus::Error(_) => return 1,
                _ => code = 2,
            }
        }
        code
    }
}

/// Column tolerance lookup with a `"default"` entry.
pub struct Tolerances(BTreeMap<String, f64>);

impl Tolerances {
    pub fn new(map: BTreeMap<String, f64>) -> Self {
        Tolerances(map)
    }

    fn get(&self, column: &str) -> f64 {
        self.0
            .get(column)
            .or_else(|| self.0.get("default"))
            .copied()
            .unwrap_or(DEFAULT_TOLERANCE)
    }
}

fn records(bytes: &[u8]) -> Result<Vec<Vec<String>>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(bytes);
    r.records()
        .map(|rec| Ok(rec?.iter().map(str::to_string).collect()))
        .collect()
}

fn cells_match(a: &str, b: &str, tol: f64) -> bool {
    if a == b {
        return true;
    }
    match (a.parse::<f64>(), b.parse::<f64>()) {
        (Ok(x), Ok(y)) => (x - y).abs() <= tol,
        _ => false,
    }
}

/// Human-readable differences between a golden and a fresh table.
pub fn diff_csv(golden: &[u8], actual: &[u8], tol: &Tolerances) -> Result<Vec<String>> {
    let g = records(golden)?;
    let a = records(actual)?;
    let mut out = Vec::new();
    let (Some(gh), Some(ah)) = (g.first(), a.first()) else {
        if g.len() != a.len() {
            out.push("one table is empty".into());
        }
        return Ok(out);
    };
    if gh != ah {
        out.push(format!("header {ah:?} != golden {gh:?}"));
        return Ok(out);
    }
    if g.len() != a.len() {
        out.push(format!("{} rows != golden {}", a.len() - 1, g.len() - 1));
    }
    for (i, (gr, ar)) in g.iter().zip(&a).enumerate().skip(1) {
        for ((col, x), y) in gh.iter().zip(ar).zip(gr) {
            if !cells_match(x, y, tol.get(col)) {
                out.push(format!("row {i} column {col}: {x} != golden {y}"));
            }
        }
    }
    Ok(out)
}

fn case_paths(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    if paths.is_empty() {
        return Err(HarnessError::Input(format!("no cases in {}", dir.display())));
    }
    Ok(paths)
}

fn run_case(path: &Path, bless: bool) -> Result<CaseStatus> {
    let case: CaseFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let kind: Kind = case.kind.parse()?;
    let outcome = run_experiment(kind, &case.spec, case.seed)?;
    if !outcome.violations.is_empty() {
        return Ok(CaseStatus::Violation(outcome.violations));
    }
    let actual = outcome.table.to_csv()?;
    let golden_path = path.with_extension("csv");
    if bless {
        std::fs::write(&golden_path, &actual)?;
        return Ok(CaseStatus::Blessed);
    }
    let Ok(golden) = std::fs::read(&golden_path) else {
        return Ok(CaseStatus::MissingGolden);
    };
    let diffs = diff_csv(&golden, &actual, &Tolerances::new(case.tolerances))?;
    Ok(if diffs.is_empty() {
        CaseStatus::Match
    } else {
        CaseStatus::Diff(diffs)
    })
}

/// Runs every case in `dir`; with `bless`, rewrites the golden files instead of diffing.
pub fn run_corpus(dir: &Path, bless: bool) -> Result<CorpusSummary> {
    let start = Instant::now();
    let mut cases = Vec::new();
    for path in case_paths(dir)? {
        let t = Instant::now();
        let status = run_case(&path, bless).unwrap_or_else(|e| CaseStatus::Error(e.to_string()));
        let name = path
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        cases.push(CaseResult {
            name,
            status,
            elapsed: t.elapsed(),
        });
    }
    Ok(CorpusSummary {
        cases,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol(pairs: &[(&str, f64)]) -> Tolerances {
        Tolerances::new(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }

    #[test]
    fn numeric_cells_use_column_tolerance() {
        let g = b"id,x,y\na,1.0,2\n";
        let a = b"id,x,y\na,1.0000001,2\n";
        assert_eq!(diff_csv(g, a, &tol(&[])).unwrap().len(), 1);
        assert!(diff_csv(g, a, &tol(&[("x", 1e-6)])).unwrap().is_empty());
        assert!(diff_csv(g, a, &tol(&[("default", 1e-6)])).unwrap().is_empty());
    }

    #[test]
    fn text_cells_and_shapes_must_match() {
        let g = b"id,x\na,1\n";
        assert_eq!(diff_csv(g, b"id,x\nb,1\n", &tol(&[])).unwrap().len(), 1);
        assert!(!diff_csv(g, b"id,x\na,1\nb,2\n", &tol(&[])).unwrap().is_empty());
        assert!(!diff_csv(g, b"id,z\na,1\n", &tol(&[])).unwrap().is_empty());
    }

    #[test]
    fn summary_exit_codes() {
        let case = |status| CaseResult {
            name: "c".into(),
            status,
            elapsed: Duration::ZERO,
        };
        let s = CorpusSummary {
            cases: vec![case(CaseStatus::Match)],
            elapsed: Duration::ZERO,
        };
        assert_eq!(s.exit_code(), 0);
        let s = CorpusSummary {
            cases: vec![case(CaseStatus::Match), case(CaseStatus::Diff(vec!["x".into()]))],
            elapsed: Duration::ZERO,
        };
        assert_eq!(s.exit_code(), 2);
    }
}
