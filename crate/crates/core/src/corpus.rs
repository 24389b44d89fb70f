//! Fixture directories: each `*.json` holds a polynomial and a subset of the
//! report it should produce.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::poly::parse_polynomial;
use crate::report::{analyze, AnalysisReport, AnalyzeOptions};

pub const REPORT_SUFFIX: &str = ".report.json";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub n: usize,
    pub polynomial: String,
    pub expected: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureResult {
    pub file: String,
    pub name: String,
    pub passed: bool,
    pub differences: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub results: Vec<FixtureResult>,
    pub warnings: Vec<String>,
}

impl CorpusSummary {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failing(&self) -> impl Iterator<Item = &FixtureResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

/// Every key of `expected` must be present in `actual` with a matching
/// value; arrays must match element-wise and have equal length.
pub fn diff_subset(path: &str, expected: &Value, actual: &Value, out: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (key, ev) in e {
                let sub = format!("{path}.{key}");
                match a.get(key) {
                    Some(av) => diff_subset(&sub, ev, av, out),
                    None => out.push(format!("{sub}: expected {ev}, field absent")),
                }
            }
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                out.push(format!("{path}: expected {} items, got {}", e.len(), a.len()));
                return;
            }
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                diff_subset(&format!("{path}[{i}]"), ev, av, out);
            }
        }
        (e, a) if e == a => {}
        (e, a) => out.push(format!("{path}: expected {e}, got {a}")),
    }
}

fn run_fixture(fixture: &Fixture) -> Result<AnalysisReport, String> {
    let p = parse_polynomial(&fixture.polynomial, None).map_err(|e| e.to_string())?;
    let p = p.with_dimension(fixture.n).map_err(|e| e.to_string())?;
    Ok(analyze(&fixture.polynomial, &p, AnalyzeOptions::default()))
}

fn check_file(path: &Path) -> FixtureResult {
    let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    let failed = |name: String, why: String| FixtureResult {
        file: file.clone(),
        name,
        passed: false,
        differences: vec![why],
    };
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return failed(String::new(), e.to_string()),
    };
    let fixture: Fixture = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => return failed(String::new(), format!("bad fixture: {e}")),
    };
    let report = match run_fixture(&fixture) {
        Ok(r) => r,
        Err(e) => return failed(fixture.name, e),
    };
    let mut differences = Vec::new();
    let actual = serde_json::to_value(&report).expect("serializable");
    diff_subset("$", &fixture.expected, &actual, &mut differences);
    let stem = file.strip_suffix(".json").unwrap_or(&file);
    let out = path.with_file_name(format!("{stem}{REPORT_SUFFIX}"));
    if let Err(e) = fs::write(&out, report.to_json() + "\n") {
        differences.push(format!("cannot write {}: {e}", out.display()));
    }
    FixtureResult {
        file,
        name: fixture.name,
        passed: differences.is_empty(),
        differences,
    }
}

/// Runs every fixture of `dir` in parallel and writes each report beside its
/// fixture.
pub fn run_corpus(dir: &Path) -> Result<CorpusSummary, CorpusError> {
    let io = |source| CorpusError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
            name.ends_with(".json") && !name.ends_with(REPORT_SUFFIX)
        })
        .collect();
    files.sort();
    let mut warnings = Vec::new();
    if files.is_empty() {
        warnings.push(format!("no fixtures found in {}", dir.display()));
    }
    let results = files.par_iter().map(|p| check_file(p)).collect();
    Ok(CorpusSummary { results, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn subset_comparison() {
        let actual = json!({"a": 1, "b": {"c": [1, 2], "d": "x"}, "e": true});
        let mut out = Vec::new();
        diff_subset("$", &json!({"b": {"c": [1, 2]}}), &actual, &mut out);
        assert!(out.is_empty());
        diff_subset("$", &json!({"b": {"c": [1]}, "e": false, "z": 0}), &actual, &mut out);
        assert_eq!(out.len(), 3);
        assert!(out[0].starts_with("$.b.c"));
    }

    fn write_fixture(dir: &Path, file: &str, body: Value) {
        fs::write(dir.join(file), serde_json::to_string(&body).unwrap()).unwrap();
    }

    #[test]
    fn corpus_runs_and_writes_reports() {
        let dir = tempfile::tempdir().unwrap();
        let empty = run_corpus(dir.path()).unwrap();
        assert!(empty.passed() && empty.warnings.len() == 1);

        write_fixture(
            dir.path(),
            "good.json",
            json!({"name": "good", "n": 2, "polynomial": "y^4 + x^3", "expected": {"flat": true, "pi_f": 0}}),
        );
        write_fixture(
            dir.path(),
            "stale.json",
            json!({"name": "stale", "n": 2, "polynomial": "y^4 + x*y + x^3", "expected": {"flat": true}}),
        );
        write_fixture(
            dir.path(),
            "padded.json",
            json!({"name": "padded", "n": 3, "polynomial": "x^2 + y^2", "expected": {"n": 3, "convenient": false}}),
        );
        let summary = run_corpus(dir.path()).unwrap();
        assert_eq!(summary.results.len(), 3);
        let failing: Vec<&str> = summary.failing().map(|r| r.name.as_str()).collect();
        assert_eq!(failing, vec!["stale"]);
        assert!(summary.results[2].differences[0].contains("$.flat"));
        assert!(dir.path().join("good.report.json").exists());
        // reports are not picked up as fixtures
        assert_eq!(run_corpus(dir.path()).unwrap().results.len(), 3);
    }
}
