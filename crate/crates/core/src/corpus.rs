//! Line-delimited JSON test cases for repetition rulings.
//!
//! Each non-blank line holds one object:
//!
//! ```json
//! {"id": "perpetual-check", "fen": "startpos", "moves": ["h2e2"], "ntimes": 1,
//!  "expected": "loss", "perspective": "red"}
//! ```
//!
//! Moves may be coordinate or WXF text, detected per token.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arbiter::{replay, rule};
use crate::board::Color;
use crate::judge::{GameResult, JudgeRules};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub id: String,
    pub fen: String,
    pub moves: Vec<String>,
    pub ntimes: u32,
    pub expected: GameResult,
    pub perspective: Color,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("corpus is empty")]
    Empty,
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusCase>, CorpusError> {
    let mut cases = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let case = serde_json::from_str(line).map_err(|e| CorpusError::Record {
            line: i + 1,
            message: e.to_string(),
        })?;
        cases.push(case);
    }
    if cases.is_empty() {
        return Err(CorpusError::Empty);
    }
    Ok(cases)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusCase>, CorpusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(&text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub id: String,
    pub expected: GameResult,
    /// `None` when the case could not be replayed.
    pub actual: Option<GameResult>,
    pub pass: bool,
    pub detail: String,
}

/// Replays a case and compares the ruling, seen from its perspective.
pub fn run_case(case: &CorpusCase) -> CaseOutcome {
    run_case_with(case, JudgeRules::default())
}

pub fn run_case_with(case: &CorpusCase, rules: JudgeRules) -> CaseOutcome {
    match replay(&case.fen, &case.moves) {
        Ok(r) => {
            let ruling = rule(&r, case.ntimes, rules);
            let actual = ruling.result_for(case.perspective);
            CaseOutcome {
                id: case.id.clone(),
                expected: case.expected,
                actual: Some(actual),
                pass: actual == case.expected,
                detail: ruling.summary(),
            }
        }
        Err(e) => CaseOutcome {
            id: case.id.clone(),
            expected: case.expected,
            actual: None,
            pass: false,
            detail: e.to_string(),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseOutcome>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Aligned table followed by `passed/total PASS`.
    pub fn render(&self) -> String {
        let width = self
            .cases
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(2)
            .max(2);
        let mut out = String::new();
        writeln!(
            out,
            "{:<width$}  {:<9}  {:<9}  {:<4}  detail",
            "id", "expected", "actual", ""
        )
        .unwrap();
        for c in &self.cases {
            let actual = c.actual.map_or("error".to_string(), |a| a.to_string());
            let mark = if c.pass { "ok" } else { "FAIL" };
            writeln!(
                out,
                "{:<width$}  {:<9}  {:<9}  {:<4}  {}",
                c.id,
                c.expected.to_string(),
                actual,
                mark,
                c.detail
            )
            .unwrap();
        }
        writeln!(out, "{}/{} PASS", self.passed, self.total).unwrap();
        out
    }
}

pub fn run_corpus(cases: &[CorpusCase]) -> CorpusReport {
    let outcomes: Vec<CaseOutcome> = cases.iter().map(run_case).collect();
    let passed = outcomes.iter().filter(|o| o.pass).count();
    CorpusReport {
        total: outcomes.len(),
        passed,
        failed: outcomes.len() - passed,
        cases: outcomes,
    }
}
